#include "arithderiv/lab.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace arithderiv {

RationalMap RationalMap::identity() { return {Kind::Identity, 0, std::nullopt}; }
RationalMap RationalMap::full() { return {Kind::Full, 0, std::nullopt}; }

RationalMap RationalMap::partial(Integer p) {
    require_prime(p);
    return {Kind::Partial, std::move(p), std::nullopt};
}

RationalMap RationalMap::sub(PrimeSet T) {
    Integer p = T.primes().front();
    return {Kind::Sub, std::move(p), std::move(T)};
}

const Integer& RationalMap::prime() const {
    if (kind_ != Kind::Partial && kind_ != Kind::Sub) throw DomainError(name() + " has no distinguished prime");
    return p_;
}

Rational RationalMap::operator()(const Rational& x) const {
    switch (kind_) {
        case Kind::Identity: return x;
        case Kind::Full: return d_full(x);
        case Kind::Partial: return d_partial(x, p_);
        case Kind::Sub: return d_sub(x, *T_);
    }
    return 0;
}

std::string RationalMap::name() const {
    switch (kind_) {
        case Kind::Identity: return "identity";
        case Kind::Full: return "D";
        case Kind::Partial: return "D_" + to_string(p_);
        case Kind::Sub: {
            std::string out = "D_{";
            for (const auto& q : T_->primes()) out += (out.size() > 3 ? "," : "") + to_string(q);
            return out + "}";
        }
    }
    return "";
}

Rational phi(const RationalMap& f, const Rational& u, const Rational& v) {
    if (u == v) throw DomainError("difference quotient needs u != v");
    return (f(u) - f(v)) / (u - v);
}

Rational phi2(const RationalMap& f, const Rational& u, const Rational& v, const Rational& w) {
    if (u == v || u == w || v == w) throw DomainError("second difference quotient needs distinct points");
    return (phi(f, u, w) - phi(f, v, w)) / (u - v);
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Converges: return "converges";
        case Verdict::Bounded: return "bounded";
        case Verdict::Oscillates: return "oscillates";
        case Verdict::Undecided: return "undecided";
    }
    return "";
}

namespace {

void require_rows(long N) {
    if (N < 2) throw DomainError("a probe needs at least 2 rows");
}

std::size_t half(const ProbeReport& r) { return r.rows.size() / 2; }

void check_generator(const ProbeReport& report) {
    const auto& rows = report.rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].in_val.finite()) throw GeneratorError("x_" + std::to_string(rows[i].i) + " equals x");
        if (i > 0 && rows[i].in_val < rows[i - 1].in_val) {
            throw GeneratorError("nu(x - x_i) decreases at i = " + std::to_string(rows[i].i));
        }
    }
    if (!(rows.front().in_val < rows.back().in_val)) throw GeneratorError("x_i does not approach x");
}

void judge_convergence(ProbeReport& report) {
    std::optional<Rational> C;
    for (std::size_t i = 0; i < half(report); ++i) {
        const auto& row = report.rows[i];
        if (!row.out_val.finite()) continue;
        Rational gap = row.in_val.value() - row.out_val.value();
        if (!C || gap > *C) C = gap;
    }
    Rational c = C.value_or(0);
    report.params["C"] = to_string(c);
    report.verdict = Verdict::Converges;
    for (std::size_t i = half(report); i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        if (row.out_val.finite() && row.out_val.value() < row.in_val.value() - c) {
            report.verdict = Verdict::Undecided;
        }
    }
}

void judge_boundedness(ProbeReport& report) {
    report.verdict = Verdict::Undecided;
    std::optional<ExtendedValuation> first_max, second_max;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& out = report.rows[i].out_val;
        if (!out.finite()) return;
        auto& slot = i < half(report) ? first_max : second_max;
        if (!slot || out.value() > slot->value()) slot = out;
    }
    if (second_max->value() <= first_max->value()) report.verdict = Verdict::Bounded;
}

void judge_quotients(ProbeReport& report) {
    report.verdict = Verdict::Undecided;
    std::size_t start = half(report);
    bool constant = true;
    std::map<ExtendedValuation, int> counts;
    for (std::size_t i = start; i < report.rows.size(); ++i) {
        if (*report.rows[i].aux != *report.rows[start].aux) constant = false;
        ++counts[report.rows[i].out_val];
    }
    if (constant) {
        report.verdict = Verdict::Converges;
        return;
    }
    auto recurring = std::count_if(counts.begin(), counts.end(), [](const auto& kv) { return kv.second >= 2; });
    if (recurring >= 2) report.verdict = Verdict::Oscillates;
}

ExtendedValuation nu_at(const QuadraticElement& x, const PrimeIdealRef& P) {
    if (x.is_zero()) return ExtendedValuation::infinity();
    return ideal_valuation(x, P);
}

nlohmann::ordered_json ideal_list(const std::vector<PrimeIdealRef>& T) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& P : T) out.push_back(P.to_string());
    return out;
}

}  // namespace

ProbeReport continuity_probe(const RationalMap& f, const Rational& x, const Generator& gen, long N,
                             const Integer& p) {
    require_prime(p);
    std::vector<Rational> points;
    switch (gen.kind) {
        case GeneratorKind::UnitPerturbation:
            require_rows(N);
            if (x == 0) throw GeneratorError("unit perturbations of 0 are all 0");
            for (long i = 1; i <= N; ++i) points.push_back(x * Rational(1 + ipow(p, i)));
            break;
        case GeneratorKind::PowerSequence: {
            require_rows(N);
            Integer base = gen.base.value_or(p);
            for (long i = 1; i <= N; ++i) points.push_back(x + Rational(ipow(base, i)));
            break;
        }
        case GeneratorKind::Custom:
            points = gen.points;
            if (N > 0 && static_cast<std::size_t>(N) < points.size()) points.resize(N);
            require_rows(static_cast<long>(points.size()));
            break;
    }

    ProbeReport report;
    report.experiment = "continuity";
    report.params["map"] = f.name();
    report.params["x"] = to_string(x);
    report.params["p"] = to_string(p);
    report.params["generator"] = gen.kind == GeneratorKind::UnitPerturbation ? "unit-perturbation"
                                 : gen.kind == GeneratorKind::PowerSequence  ? "power-sequence"
                                                                             : "custom";
    if (gen.kind == GeneratorKind::PowerSequence) report.params["base"] = to_string(gen.base.value_or(p));
    report.params["N"] = points.size();

    const Rational fx = f(x);
    for (std::size_t i = 0; i < points.size(); ++i) {
        report.rows.push_back({static_cast<long>(i + 1), nu(x - points[i], p), nu(fx - f(points[i]), p),
                               std::nullopt});
    }
    check_generator(report);
    judge_convergence(report);
    return report;
}

ProbeReport continuity_probe(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T,
                             const PrimeIdealRef& P, long N) {
    require_rows(N);
    if (x.is_zero()) throw GeneratorError("unit perturbations of 0 are all 0");
    auto f = [&](const QuadraticElement& y) { return T.empty() ? d_K(y) : d_K_sub(y, T); };

    ProbeReport report;
    report.experiment = "continuity";
    report.params["map"] = T.empty() ? "D_K" : "D_{K,T}";
    report.params["D"] = to_string(x.field().D());
    report.params["x"] = x.to_string();
    report.params["ideal"] = P.to_string();
    if (!T.empty()) report.params["T"] = ideal_list(T);
    report.params["generator"] = "unit-perturbation";
    report.params["N"] = N;

    const auto fx = f(x);
    for (long i = 1; i <= N; ++i) {
        auto xi = x * Rational(1 + ipow(P.p, i));
        report.rows.push_back({i, nu_at(x - xi, P), nu_at(fx - f(xi), P), std::nullopt});
    }
    check_generator(report);
    judge_convergence(report);
    return report;
}

ProbeReport discontinuity_witness(const PrimeSet& T, const Integer& p, const Rational& x, long N) {
    require_prime(p);
    require_rows(N);
    if (x == 0) throw DomainError("the witness needs x != 0");
    auto q0_it = std::find_if(T.primes().begin(), T.primes().end(), [&](const Integer& q) { return q != p; });
    if (q0_it == T.primes().end()) throw DomainError("T must contain a prime other than p");
    const Integer& q0 = *q0_it;

    // M = max{nu_p(j) : 1 <= j <= n} + 1 with n = [Q : Q] = 1.
    const unsigned long M = 1;
    const Integer base = ipow(q0, ipow(p, M).get_ui());
    constexpr long kCandidateCap = 1'000'000;

    ProbeReport report;
    report.experiment = "discont";
    report.params["T"] = [&] {
        auto a = nlohmann::ordered_json::array();
        for (const auto& q : T.primes()) a.push_back(to_string(q));
        return a;
    }();
    report.params["p"] = to_string(p);
    report.params["x"] = to_string(x);
    report.params["q0"] = to_string(q0);
    report.params["M"] = M;
    report.params["base"] = to_string(base);
    report.params["N"] = N;

    // n_i > n_{i-1} keeps the q_i pairwise distinct; p not dividing n_i makes
    // nu_p(x - x_i) = nu_p(x) + i exactly.
    const Rational fx = d_sub(x, T);
    Integer n_prev = 0;
    for (long i = 1; i <= N; ++i) {
        Integer step = ipow(p, i);
        Integer n = n_prev;
        long tried = 0;
        while (true) {
            ++n;
            if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) continue;
            if (is_prime(Integer(base + n * step))) break;
            if (++tried >= kCandidateCap) {
                throw SearchError("no prime q_" + std::to_string(i) + " = " + to_string(base) + " + n*" +
                                      to_string(p) + "^" + std::to_string(i) + " within 10^6 candidates",
                                  report);
            }
        }
        n_prev = n;
        Integer q = base + n * step;
        Rational xi = Rational(base) * x / Rational(q);
        report.rows.push_back({i, nu(x - xi, p), nu(fx - d_sub(xi, T), p), Rational(q)});
    }
    judge_boundedness(report);
    return report;
}

namespace {

struct Congruence {
    PrimeIdealRef P;
    Integer c;        // x = c (mod P^K) as seen through the completion at P
    unsigned long K;  // precision as a power of p
};

// Image of omega under the embedding sqrt D -> root (mod p^K), where root is
// the canonical root for Plus and its negative for Minus.
Integer omega_image(const QuadraticField& K, const Integer& p, IdealSlot slot, unsigned long prec,
                    bool half_integral) {
    Integer modulus = ipow(p, prec);
    Integer r = sqrt_mod_lift(K.D(), p, prec + 1);
    if (slot == IdealSlot::Minus) r = -r;
    if (!half_integral) return mod_floor(r, modulus);
    if (p == 2) return mod_floor((1 + r) / 2, modulus);
    Integer inv2;
    Integer two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), modulus.get_mpz_t());
    return mod_floor((1 + r) * inv2, modulus);
}

// x in O_K = Z[omega] satisfying every congruence.
QuadraticElement solve_congruences(const QuadraticField& K, const std::vector<Congruence>& conds) {
    const bool half_integral = mod_floor(K.D(), 4) == 1;
    std::map<Integer, std::vector<const Congruence*>> by_prime;
    for (const auto& c : conds) by_prime[c.P.p].push_back(&c);

    std::vector<Residue> ra, rb;
    for (const auto& [p, group] : by_prime) {
        unsigned long prec = 0;
        for (const auto* c : group) prec = std::max(prec, c->K);
        Integer modulus = ipow(p, prec);
        Integer a, b = 0;
        if (group.size() == 1) {
            a = mod_floor(group[0]->c, modulus);
        } else {
            // Both ideals over a split p: a + b s_plus = t_plus, a + b s_minus = t_minus.
            const Congruence* plus = group[0]->P.slot == IdealSlot::Plus ? group[0] : group[1];
            const Congruence* minus = plus == group[0] ? group[1] : group[0];
            Integer sp = omega_image(K, p, IdealSlot::Plus, prec, half_integral);
            Integer sm = omega_image(K, p, IdealSlot::Minus, prec, half_integral);
            Integer diff = mod_floor(sp - sm, modulus), inv;
            if (mpz_invert(inv.get_mpz_t(), diff.get_mpz_t(), modulus.get_mpz_t()) == 0) {
                throw std::logic_error("conjugate embeddings agree modulo p");
            }
            b = mod_floor((plus->c - minus->c) * inv, modulus);
            a = mod_floor(plus->c - b * sp, modulus);
        }
        ra.push_back({a, modulus});
        rb.push_back({b, modulus});
    }
    Integer A = crt(ra), B = crt(rb);
    if (half_integral) return QuadraticElement(K, Rational(A) + Rational(B, 2), Rational(B, 2));
    return QuadraticElement(K, Rational(A), Rational(B));
}

}  // namespace

ProbeReport special_witness(const QuadraticField& K, const std::vector<PrimeIdealRef>& T,
                            const PrimeIdealRef& focus, const QuadraticElement& x, long N) {
    require_rows(N);
    if (!(x.field() == K)) throw DomainError("x is not in the given field");
    if (x.is_zero()) throw DomainError("the witness needs x != 0");
    if (T.size() < 2) throw DomainError("T needs at least two prime ideals");
    for (std::size_t i = 0; i < T.size(); ++i) {
        auto above = primes_above(K, T[i].p);
        if (std::find(above.begin(), above.end(), T[i]) == above.end()) {
            throw DomainError(T[i].to_string() + " is not a prime ideal of the field");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (T[i] == T[j]) throw DomainError("T lists " + T[i].to_string() + " twice");
        }
    }
    if (std::find(T.begin(), T.end(), focus) == T.end()) throw DomainError("focus must belong to T");
    const PrimeIdealRef P1 = *std::find_if(T.begin(), T.end(), [&](const auto& P) { return !(P == focus); });

    const QuadraticElement one(K, 1);
    const auto g1 = splitting(K, P1.p).g;
    Rational constant = ideal_valuation(x, focus).value() -
                        ideal_valuation(QuadraticElement(K, Rational(P1.p)), focus).value() -
                        nu_at(QuadraticElement(K, g1), focus).value();

    ProbeReport report;
    report.experiment = "special";
    report.params["D"] = to_string(K.D());
    report.params["T"] = ideal_list(T);
    report.params["focus"] = focus.to_string();
    report.params["p1_ideal"] = P1.to_string();
    report.params["x"] = x.to_string();
    report.params["N"] = N;
    report.params["constant"] = to_string(constant);

    const auto fx = d_K_sub(x, T);
    for (long i = 1; i <= N; ++i) {
        std::vector<Congruence> conds;
        for (const auto& P : T) {
            if (P == focus) {
                conds.push_back({P, 1 - ipow(P.p, i), static_cast<unsigned long>(i) + 1});
            } else if (P == P1) {
                conds.push_back({P, P.p, 2});
            } else {
                conds.push_back({P, 1, 1});
            }
        }
        auto xi = solve_congruences(K, conds);
        bool ok = ideal_valuation(one - xi, focus).value() == i;
        for (const auto& P : T) {
            if (P == focus) continue;
            ok = ok && ideal_valuation(xi, P).value() == (P == P1 ? 1 : 0);
        }
        if (!ok) throw std::logic_error("CRT element misses its valuations at i = " + std::to_string(i));

        auto y = xi * x;
        report.rows.push_back({i, nu_at(x - y, focus), nu_at(fx - d_K_sub(y, T), focus), std::nullopt});
    }
    judge_boundedness(report);
    return report;
}

ProbeReport strict_diff_probe(const RationalMap& f, const Rational& x, long N, const Integer& p) {
    require_prime(p);
    require_rows(N);
    ProbeReport report;
    report.experiment = "strictdiff";
    report.params["map"] = f.name();
    report.params["x"] = to_string(x);
    report.params["p"] = to_string(p);
    report.params["N"] = N;

    if (x != 0) {
        const Rational limit = f(x) / x;
        report.params["limit"] = to_string(limit);
        auto phi2_values = nlohmann::ordered_json::array();
        for (long i = 1; i <= N; ++i) {
            Rational u = x * Rational(1 + ipow(p, i));
            Rational v = x * Rational(1 - ipow(p, i));
            Rational w = x * Rational(1 + ipow(p, i + 1));
            Rational q = phi(f, u, v);
            phi2_values.push_back(to_string(phi2(f, u, v, w)));
            report.rows.push_back({i, nu(x - u, p), nu(q - limit, p), q});
        }
        report.params["phi2"] = phi2_values;
    } else {
        bool sees_p = true;
        Integer q;
        if (f.kind() == RationalMap::Kind::Partial && f.prime() != p) {
            sees_p = false;
            q = f.prime();
        } else if (f.kind() == RationalMap::Kind::Sub && !f.primes()->contains(p)) {
            sees_p = false;
            q = f.primes()->primes().front();
        }
        const Integer base = sees_p ? p : Integer(p * q);
        report.params["base"] = to_string(base);
        for (long i = 1; i <= N; ++i) {
            Rational u(ipow(base, i + 1));
            Rational v(ipow(base, i));
            Rational q_i = phi(f, u, v);
            report.rows.push_back({i, nu(v, p), nu(q_i, p), q_i});
        }
    }
    judge_quotients(report);
    return report;
}

}  // namespace arithderiv
