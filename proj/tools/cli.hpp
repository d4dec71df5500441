#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace arithderiv::cli {

struct CommandResult {
    bool ok = true;
    nlohmann::ordered_json payload;
    std::optional<std::string> error_kind;
    int exit_code = 0;    // 0 ok, 1 library error, 2 usage error
    std::string out;      // what goes to stdout
    std::string err;      // diagnostics for stderr
};

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace arithderiv::cli
