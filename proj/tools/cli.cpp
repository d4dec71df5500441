#include "cli.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "arithderiv/antideriv.hpp"
#include "arithderiv/core.hpp"
#include "arithderiv/dynamics.hpp"
#include "arithderiv/lab.hpp"
#include "arithderiv/qderiv.hpp"
#include "arithderiv/quadfield.hpp"

namespace arithderiv::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed literals are usage errors, not domain errors.
template <class F>
auto parse_arg(const std::string& flag, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Rational arg_rational(const std::string& flag, const std::string& text) {
    return parse_arg(flag, [&] { return parse_rational(text); });
}

Integer arg_integer(const std::string& flag, const std::string& text) {
    return parse_arg(flag, [&] { return parse_integer(text); });
}

ExtendedValuation arg_valuation(const std::string& text, long e) {
    if (e < 1) throw UsageError("-e: ramification index must be positive");
    return parse_arg("-v", [&] { return ExtendedValuation::parse(text, e); });
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
        if (pos == std::string::npos) return out;
        start = pos + 1;
    }
}

PrimeSet arg_prime_set(const std::string& flag, const std::string& text) {
    std::vector<Integer> primes;
    for (const auto& part : split(text, ',')) primes.push_back(arg_integer(flag, part));
    return PrimeSet(std::move(primes));
}

// "5+" / "5-" for the two ideals over a split prime, "2" for the only one.
PrimeIdealRef arg_ideal(const std::string& flag, std::string text) {
    IdealSlot slot = IdealSlot::Only;
    if (!text.empty() && (text.back() == '+' || text.back() == '-')) {
        slot = text.back() == '+' ? IdealSlot::Plus : IdealSlot::Minus;
        text.pop_back();
    }
    return {arg_integer(flag, text), slot};
}

std::vector<PrimeIdealRef> arg_ideals(const std::string& flag, const std::string& text) {
    std::vector<PrimeIdealRef> out;
    for (const auto& part : split(text, ',')) out.push_back(arg_ideal(flag, part));
    return out;
}

std::pair<long, long> arg_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--brute-range: expected a..b");
    auto lo = arg_integer("--brute-range", text.substr(0, dots));
    auto hi = arg_integer("--brute-range", text.substr(dots + 2));
    if (!lo.fits_slong_p() || !hi.fits_slong_p() || lo > hi) throw UsageError("--brute-range: bad bounds");
    return {lo.get_si(), hi.get_si()};
}

json strings(const std::vector<Integer>& values) {
    auto out = json::array();
    for (const auto& v : values) out.push_back(to_string(v));
    return out;
}

json strings(const std::vector<ExtendedValuation>& values) {
    auto out = json::array();
    for (const auto& v : values) out.push_back(v.to_string());
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string payload_csv(const json& payload) {
    std::string out = "key,value\r\n";
    for (const auto& [key, value] : payload.items()) {
        out += csv_field(key) + "," + csv_field(value.is_string() ? value.get<std::string>() : value.dump()) + "\r\n";
    }
    return out;
}

RationalMap arg_map(const std::string& kind, const std::string& p_text, const std::string& T_text) {
    if (kind == "identity") return RationalMap::identity();
    if (kind == "full") return RationalMap::full();
    if (kind == "partial") {
        if (p_text.empty()) throw UsageError("--map partial needs -p");
        return RationalMap::partial(arg_integer("-p", p_text));
    }
    if (T_text.empty()) throw UsageError("--map sub needs -T");
    return RationalMap::sub(arg_prime_set("-T", T_text));
}

json solution_json(const AntiderivativeSolution& s) {
    json j;
    j["valuation"] = s.valuation.to_string();
    j["element"] = s.rational ? to_string(*s.rational) : s.element.to_string();
    j["form"] = s.element.to_string();
    j["b"] = to_string(s.b);
    j["k"] = s.k;
    j["c"] = s.c ? json(to_string(*s.c)) : json(nullptr);
    return j;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
    CLI::App app{"Exact arithmetic derivatives, valuation dynamics, anti-derivatives, quadratic fields "
                 "and p-adic continuity experiments."};
    app.name("arithderiv");
    app.fallthrough();
    app.require_subcommand(1);

    std::string format = "json";
    long long seed = 0;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "seed for randomized generators");

    std::string x_text, p_text, T_text, v_text, y_text, D_text, mode, range_text, ideal_text, focus_text;
    std::string map_kind = "partial", generator = "unit", base_text, points_text;
    long e = 1, steps = 20, count = 1, N = 20;
    std::string offset_text = "0", bound_text = "100";

    auto* deriv = app.add_subcommand("deriv", "D(x) for rational x");
    deriv->add_option("x", x_text, "rational a or a/b")->required();

    auto* pderiv = app.add_subcommand("pderiv", "D_p(x); x may be unit*p^exponent");
    pderiv->add_option("x", x_text)->required();
    pderiv->add_option("-p", p_text)->required();

    auto* subderiv = app.add_subcommand("subderiv", "D_T(x)");
    subderiv->add_option("x", x_text)->required();
    subderiv->add_option("-T", T_text, "comma separated primes")->required();

    auto* iterate = app.add_subcommand("iterate", "valuations of iterated partial derivatives");
    iterate->add_option("-v", v_text)->required();
    iterate->add_option("-p", p_text)->required();
    iterate->add_option("-e", e);
    iterate->add_option("-n", steps);
    iterate->add_option("--offset", offset_text);

    auto* predict = app.add_subcommand("predict", "kappa profile and predicted increments");
    predict->add_option("-v", v_text)->required();
    predict->add_option("-p", p_text)->required();
    predict->add_option("-e", e);
    predict->add_option("-n", steps);

    auto* classify_cmd = app.add_subcommand("classify", "eventual behaviour of the valuation sequence");
    classify_cmd->add_option("-v", v_text)->required();
    classify_cmd->add_option("-p", p_text)->required();
    classify_cmd->add_option("-e", e);

    auto* antideriv = app.add_subcommand("antideriv", "all x with D_p(x) = y");
    antideriv->add_option("y", y_text)->required();
    antideriv->add_option("-p", p_text)->required();
    antideriv->add_option("-e", e);
    antideriv->add_option("--brute-range", range_text, "a..b");

    auto* construct = app.add_subcommand("construct-n", "an x0 whose derivative has exactly n antiderivatives");
    construct->add_option("-p", p_text)->required();
    construct->add_option("-n", count)->required();
    construct->add_option("--mode", mode)->required()->check(CLI::IsMember({"paper", "small-k", "minimal-k"}));

    auto* quad = app.add_subcommand("quad", "quadratic fields");
    quad->require_subcommand(1);
    auto* quad_split = quad->add_subcommand("split", "splitting of p");
    quad_split->add_option("-D", D_text)->required();
    quad_split->add_option("-p", p_text)->required();
    auto* quad_deriv = quad->add_subcommand("deriv", "D_K(x) or D_{K,T}(x)");
    quad_deriv->add_option("-D", D_text)->required();
    quad_deriv->add_option("-x", x_text, "a,b for a + b sqrt(D)")->required();
    quad_deriv->add_option("-T", T_text, "ideals such as 5+,5-,2");
    auto* quad_ld = quad->add_subcommand("ld-image", "generators of ld_K(K*)");
    quad_ld->add_option("-D", D_text)->required();
    quad_ld->add_option("--bound", bound_text);

    auto* lab = app.add_subcommand("lab", "continuity experiments");
    lab->require_subcommand(1);
    auto* lab_cont = lab->add_subcommand("continuity", "nu(f(x) - f(x_i)) along x_i -> x");
    lab_cont->add_option("--map", map_kind)->check(CLI::IsMember({"identity", "full", "partial", "sub"}));
    lab_cont->add_option("-p", p_text);
    lab_cont->add_option("-T", T_text);
    lab_cont->add_option("-x", x_text)->required();
    lab_cont->add_option("-D", D_text, "work in Q(sqrt D); -x is then a,b");
    lab_cont->add_option("--ideal", ideal_text);
    lab_cont->add_option("--generator", generator)
        ->check(CLI::IsMember({"unit", "power", "custom", "random-unit"}));
    lab_cont->add_option("--base", base_text);
    lab_cont->add_option("--points", points_text, "comma separated x_i for --generator custom");
    lab_cont->add_option("-N", N);
    auto* lab_discont = lab->add_subcommand("discont", "discontinuity witness for D_T");
    lab_discont->add_option("-T", T_text)->required();
    lab_discont->add_option("-p", p_text)->required();
    lab_discont->add_option("-x", x_text)->required();
    lab_discont->add_option("-N", N);
    auto* lab_special = lab->add_subcommand("special", "witness at a prime ideal of a quadratic field");
    lab_special->add_option("-D", D_text)->required();
    lab_special->add_option("-T", T_text)->required();
    lab_special->add_option("--focus", focus_text)->required();
    lab_special->add_option("-x", x_text)->required();
    lab_special->add_option("-N", N);
    auto* lab_strict = lab->add_subcommand("strictdiff", "difference quotients near x");
    lab_strict->add_option("--map", map_kind)->check(CLI::IsMember({"identity", "full", "partial", "sub"}));
    lab_strict->add_option("-p", p_text)->required();
    lab_strict->add_option("-T", T_text);
    lab_strict->add_option("-x", x_text)->required();
    lab_strict->add_option("-N", N);

    CommandResult result;
    auto usage = [&](const std::string& message) {
        result.ok = false;
        result.exit_code = 2;
        result.error_kind = "usage";
        result.payload = json{{"error_kind", "usage"}, {"message", message}};
        result.out = result.payload.dump() + "\n";
        result.err = message + "\nRun with --help for usage.\n";
        return result;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::CallForAllHelp&) {
        result.out = app.help("", CLI::AppFormatMode::All);
        return result;
    } catch (const CLI::ParseError& e) {
        return usage(e.what());
    }

    std::optional<ProbeReport> report;
    try {
        json& out = result.payload;
        auto p = [&] { return arg_integer("-p", p_text); };

        if (deriv->parsed()) {
            out["value"] = to_string(d_full(arg_rational("x", x_text)));
        } else if (pderiv->parsed()) {
            Integer prime = p();
            if (x_text.find('^') != std::string::npos) {
                auto form = parse_arg("x", [&] { return PrimePowerForm::parse(x_text, prime); });
                out["value"] = ppf_derivative(form).display();
            } else {
                out["value"] = to_string(d_partial(arg_rational("x", x_text), prime));
            }
        } else if (subderiv->parsed()) {
            out["value"] = to_string(d_sub(arg_rational("x", x_text), arg_prime_set("-T", T_text)));
        } else if (iterate->parsed()) {
            if (steps < 1) throw UsageError("-n must be positive");
            auto seq = nu_sequence(arg_valuation(v_text, e), p(), steps, arg_integer("--offset", offset_text));
            out["sequence"] = strings(seq);
            out["increments"] = strings(increments(seq));
        } else if (predict->parsed()) {
            if (steps < 1) throw UsageError("-n must be positive");
            auto v0 = arg_valuation(v_text, e);
            Integer prime = p();
            auto profile = kappa_profile(v0, prime);
            auto predicted = predicted_inc_sequence(profile, prime);
            auto observed = increments(nu_sequence(v0, prime, steps));
            auto cycle = detect_cycle(v0, prime);
            out["kappa0"] = to_string(profile.kappa0);
            out["kappas"] = strings(profile.kappas);
            out["N"] = profile.N;
            out["period"] = to_string(profile.period);
            out["preperiod"] = strings(predicted.preperiod);
            out["cycle"] = strings(predicted.cycle);
            out["oracle_steps"] = steps;
            out["oracle_match"] = predicted.take(observed.size()) == observed &&
                                  cycle.outcome == CycleDetection::Outcome::Cycle &&
                                  Integer(static_cast<unsigned long>(cycle.length)) == profile.period;
        } else if (classify_cmd->parsed()) {
            auto c = classify(arg_valuation(v_text, e), p());
            out["class"] = c.name();
            if (c.period) out["period"] = to_string(*c.period);
        } else if (antideriv->parsed()) {
            Integer prime = p();
            auto y = parse_arg("y", [&] { return PrimePowerForm::parse(y_text, prime); });
            auto set = antiderivatives(y, e);
            out["y"] = y.display();
            out["p"] = to_string(prime);
            if (set.all_units_and_zero) {
                out["all_units_and_zero"] = true;
                out["solutions"] = json::array();
            } else {
                auto solutions = json::array();
                for (const auto& s : set.solutions) solutions.push_back(solution_json(s));
                out["solutions"] = solutions;
                out["primitive"] = set.solutions.empty() ? json(nullptr) : solutions.front()["element"];
            }
            if (!range_text.empty()) {
                auto [lo, hi] = arg_range(range_text);
                auto brute = brute_force_antiderivatives(y.materialize(), prime, lo, hi);
                auto listed = json::array();
                for (const auto& x : brute) listed.push_back(to_string(x));
                out["brute_force"] = listed;
                std::vector<Rational> solver;
                for (const auto& s : set.solutions) {
                    if (s.valuation.value() >= lo && s.valuation.value() <= hi && s.rational) {
                        solver.push_back(*s.rational);
                    }
                }
                auto by_value = [](const Rational& a, const Rational& b) { return a < b; };
                std::sort(solver.begin(), solver.end(), by_value);
                std::sort(brute.begin(), brute.end(), by_value);
                out["agrees"] = solver == brute;
            }
        } else if (construct->parsed()) {
            Integer prime = p();
            auto c = construct_with_n_antiderivatives(
                prime, count,
                mode == "paper"     ? ConstructionMode::Paper
                : mode == "small-k" ? ConstructionMode::SmallK
                                    : ConstructionMode::MinimalK);
            auto y = ppf_derivative(c.x0);
            auto set = antiderivatives(y);
            out["x0"] = c.x0.to_string();
            out["b0"] = to_string(c.b0);
            out["k0"] = c.k0;
            out["y"] = y.to_string();
            out["count"] = set.solutions.size();
            out["primitive"] = !set.solutions.empty() && set.solutions.front().element == c.x0;
            out["c_set"] = strings(c_set(c.b0, c.k0, prime).members);
        } else if (quad_split->parsed()) {
            QuadraticField K(arg_integer("-D", D_text));
            auto s = splitting(K, p());
            out["type"] = to_string(s.type);
            out["e"] = s.e;
            out["f"] = s.f;
            out["g"] = s.g;
        } else if (quad_deriv->parsed()) {
            QuadraticField K(arg_integer("-D", D_text));
            auto x = parse_arg("-x", [&] { return QuadraticElement::parse(K, x_text); });
            out["x"] = x.to_string();
            if (T_text.empty()) {
                auto d = d_K(x);
                out["value"] = d.to_string();
                out["a"] = to_string(d.a());
                out["b"] = to_string(d.b());
                if (!x.is_zero()) out["ld"] = to_string(ld_K(x));
            } else {
                auto T = arg_ideals("-T", T_text);
                auto d = d_K_sub(x, T);
                out["value"] = d.to_string();
                out["a"] = to_string(d.a());
                out["b"] = to_string(d.b());
                auto vals = json::object();
                if (!x.is_zero()) {
                    for (const auto& P : T) vals[P.to_string()] = ideal_valuation(x, P).to_string();
                }
                out["valuations"] = vals;
            }
        } else if (quad_ld->parsed()) {
            QuadraticField K(arg_integer("-D", D_text));
            Integer bound = arg_integer("--bound", bound_text);
            auto G = ld_image_generators(K, bound);
            auto m = json::object();
            for (const auto& [q, mq] : G.exceptional) m[to_string(q)] = mq;
            std::vector<Integer> primes;
            for (Integer q = 2; q <= bound && primes.size() < 10; ++q) {
                if (is_prime(q)) primes.push_back(q);
            }
            auto [iso, witness] = groups_isomorphic(rational_ld_image(), G);
            out["D"] = to_string(K.D());
            out["delta"] = to_string(K.delta());
            out["m"] = m;
            out["primes"] = strings(primes);
            out["heights"] = height_vector(G, primes);
            out["isomorphic_to_rational_image"] = iso;
            out["witness"] = strings(witness);
        } else if (lab_cont->parsed()) {
            if (!D_text.empty()) {
                QuadraticField K(arg_integer("-D", D_text));
                auto x = parse_arg("-x", [&] { return QuadraticElement::parse(K, x_text); });
                if (ideal_text.empty()) throw UsageError("--ideal is required with -D");
                auto T = T_text.empty() ? std::vector<PrimeIdealRef>{} : arg_ideals("-T", T_text);
                report = continuity_probe(x, T, arg_ideal("--ideal", ideal_text), N);
            } else {
                auto f = arg_map(map_kind, p_text, T_text);
                Integer prime = !p_text.empty() ? p() : f.kind() == RationalMap::Kind::Sub ? f.prime() : Integer(0);
                if (prime == 0) throw UsageError("-p is required for this map");
                Rational x = arg_rational("-x", x_text);
                Generator gen;
                if (generator == "power") {
                    gen.kind = GeneratorKind::PowerSequence;
                    if (!base_text.empty()) gen.base = arg_integer("--base", base_text);
                } else if (generator == "custom") {
                    gen.kind = GeneratorKind::Custom;
                    if (points_text.empty()) throw UsageError("--generator custom needs --points");
                    for (const auto& part : split(points_text, ',')) gen.points.push_back(arg_rational("--points", part));
                } else if (generator == "random-unit") {
                    // x_i = x (1 + u_i p^i) with random units u_i.
                    gen.kind = GeneratorKind::Custom;
                    if (N < 2) throw UsageError("-N must be at least 2");
                    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
                    for (long i = 1; i <= N; ++i) {
                        Integer u;
                        do {
                            u = static_cast<unsigned long>(rng() % 1'000'000) + 1;
                        } while (mpz_divisible_p(u.get_mpz_t(), prime.get_mpz_t()));
                        gen.points.push_back(x * Rational(1 + u * ipow(prime, i)));
                    }
                }
                report = continuity_probe(f, x, gen, N, prime);
                if (generator == "random-unit") {
                    report->params["generator"] = "random-unit";
                    report->params["seed"] = seed;
                }
            }
        } else if (lab_discont->parsed()) {
            report = discontinuity_witness(arg_prime_set("-T", T_text), p(), arg_rational("-x", x_text), N);
        } else if (lab_special->parsed()) {
            QuadraticField K(arg_integer("-D", D_text));
            auto x = parse_arg("-x", [&] { return QuadraticElement::parse(K, x_text); });
            report = special_witness(K, arg_ideals("-T", T_text), arg_ideal("--focus", focus_text), x, N);
        } else if (lab_strict->parsed()) {
            auto f = arg_map(map_kind, p_text, T_text);
            report = strict_diff_probe(f, arg_rational("-x", x_text), N, p());
        }
        if (report) out = to_json(*report);
    } catch (const UsageError& e) {
        return usage(e.what());
    } catch (const Error& e) {
        result.ok = false;
        result.exit_code = 1;
        result.error_kind = e.kind();
        result.payload = json{{"error_kind", e.kind()}, {"message", e.what()}};
        if (const auto* search = dynamic_cast<const SearchError*>(&e)) {
            result.payload["partial"] = to_json(search->partial());
        }
        result.out = result.payload.dump() + "\n";
        result.err = std::string("error (") + e.kind() + "): " + e.what() + "\n";
        return result;
    }

    if (format == "csv") {
        result.out = report ? to_csv(*report) : payload_csv(result.payload);
    } else {
        result.out = result.payload.dump() + "\n";
    }
    return result;
}

}  // namespace arithderiv::cli
