#include "arithderiv/lab.hpp"

namespace arithderiv {

nlohmann::ordered_json to_json(const ProbeReport& report) {
    nlohmann::ordered_json out;
    out["experiment"] = report.experiment;
    out["params"] = report.params;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["i"] = row.i;
        r["in_val"] = row.in_val.to_string();
        r["out_val"] = row.out_val.to_string();
        r["aux"] = row.aux ? nlohmann::ordered_json(to_string(*row.aux)) : nlohmann::ordered_json(nullptr);
        rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
    out["verdict"] = to_string(report.verdict);
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv(const ProbeReport& report) {
    std::string out = "i,in_val,out_val,aux\r\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.i) + "," + csv_field(row.in_val.to_string()) + "," +
               csv_field(row.out_val.to_string()) + "," + (row.aux ? csv_field(to_string(*row.aux)) : "") +
               "\r\n";
    }
    return out;
}

}  // namespace arithderiv
