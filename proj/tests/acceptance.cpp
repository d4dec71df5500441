// Acceptance gate: one PASS/FAIL line per criterion. With a criterion number as
// argument only that criterion runs; the exit status is nonzero on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>

#include "arithderiv/antideriv.hpp"
#include "arithderiv/dynamics.hpp"
#include "arithderiv/lab.hpp"
#include "arithderiv/qderiv.hpp"
#include "arithderiv/quadfield.hpp"
#include "support.hpp"

using namespace arithderiv;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    long checks = 0;
    long failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what = {}) {
        ++checks;
        if (ok) return;
        ++failures;
        if (pass) first_failure = what;
        pass = false;
    }
};

long mod(long a, long m) { return ((a % m) + m) % m; }

bool squarefree(long d) {
    if (d == 0 || d == 1) return false;
    long m = d < 0 ? -d : d;
    for (long q = 2; q * q <= m; ++q) {
        if (m % (q * q) == 0) return false;
    }
    return true;
}

std::vector<long> squarefree_range(long bound) {
    std::vector<long> out;
    for (long d = -bound; d <= bound; ++d) {
        if (squarefree(d)) out.push_back(d);
    }
    return out;
}

std::vector<Rational> sorted(std::vector<Rational> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
    o.expect(d_full(Rational(-21, 16)) == 2, "D(-21/16)");
    o.expect(d_full(Rational(-5, 4)) == 1, "D(-5/4)");
    o.expect(d_full(0) == 0, "D(0)");
    o.expect(d_partial(12, 2) == 12, "D_2(12)");
    o.detail << "D(-21/16)=" << to_string(d_full(Rational(-21, 16))) << " D(-5/4)=" << to_string(d_full(Rational(-5, 4)))
             << " D(0)=" << to_string(d_full(0)) << " D_2(12)=" << to_string(d_partial(12, 2));
}

// Grid of starting valuations: integers in [-300, 300] and c/e for c in
// [-300, 300], e in {2, 3, 4, 6}.
std::vector<ExtendedValuation> dynamics_grid() {
    std::vector<ExtendedValuation> grid;
    for (long v = -300; v <= 300; ++v) grid.emplace_back(v);
    for (long e : {2L, 3L, 4L, 6L}) {
        for (long c = -300; c <= 300; ++c) {
            if (c % e != 0) grid.emplace_back(c, e);
        }
    }
    return grid;
}

void criterion2(Outcome& o) {
    long zero = 0, periodic = 0, diverging = 0;
    for (long p : {2L, 3L, 5L, 7L}) {
        for (const auto& v : dynamics_grid()) {
            Rational start = v.value();
            auto seq = oracle::nu_sequence(start, p, 500);
            auto cls = classify(v, p);
            std::string tag = "v0=" + v.to_string() + " p=" + std::to_string(p);
            switch (cls.kind) {
                case DynamicsClass::EventuallyZero: {
                    ++zero;
                    bool hits = seq.size() >= 2 && !seq.back() && *seq[seq.size() - 2] == 0;
                    o.expect(hits, tag + " should reach 0 then +inf");
                    break;
                }
                case DynamicsClass::EventuallyPeriodic: {
                    ++periodic;
                    auto cyc = oracle::find_cycle(start, p, 500);
                    bool ok = cyc && !cyc->reaches_infinity &&
                              Integer(static_cast<unsigned long>(cyc->length)) == *cls.period && *cls.period <= p;
                    o.expect(ok, tag + " period");
                    break;
                }
                case DynamicsClass::DivergesToMinusInfinity: {
                    ++diverging;
                    bool ok = seq.size() == 501;
                    for (std::size_t i = 1; ok && i < seq.size(); ++i) ok = *seq[i] < *seq[i - 1];
                    o.expect(ok, tag + " strictly decreasing");
                    break;
                }
            }
        }
    }
    o.detail << o.checks << " starts (" << zero << " zero-tail, " << periodic << " periodic, " << diverging
             << " decreasing), " << o.failures << " mismatches";
}

void criterion3(Outcome& o) {
    long compared = 0;
    for (long p : {2L, 3L, 5L, 7L}) {
        for (const auto& v : dynamics_grid()) {
            if (classify(v, p).kind != DynamicsClass::EventuallyPeriodic) continue;
            ++compared;
            auto seq = oracle::nu_sequence(v.value(), p, 500);
            std::vector<Integer> diffs;
            for (std::size_t i = 1; i < seq.size(); ++i) diffs.push_back(Rational(*seq[i] - *seq[i - 1]).get_num());
            auto predicted = predicted_inc_sequence(kappa_profile(v, p), p).take(500);
            o.expect(predicted == diffs, "v0=" + v.to_string() + " p=" + std::to_string(p));
        }
    }
    o.detail << compared << " periodic starts x 500 terms, " << o.failures << " mismatches";
}

void criterion4(Outcome& o) {
    oracle::Rng rng(0xacce0004);
    long targets = 0;
    for (long p : {2L, 3L, 5L}) {
        for (int t = 0; t < 1000; ++t) {
            long w = rng.uniform(-1000, 1000);
            Rational unit = rng.nonzero_rational(60);
            while (oracle::valuation(unit, Integer(p)) != 0) unit = rng.nonzero_rational(60);
            Rational y = w >= 0 ? Rational(unit * Rational(ipow(p, static_cast<unsigned long>(w))))
                                : Rational(unit / Rational(ipow(p, static_cast<unsigned long>(-w))));
            std::vector<Rational> solved;
            for (const auto& s : antiderivatives(y, p).solutions) solved.push_back(*s.rational);
            o.expect(sorted(solved) == sorted(brute_force_antiderivatives(y, p, w - 20, w + 20)),
                     "y=" + to_string(y) + " p=" + std::to_string(p));
            ++targets;
        }
    }
    std::vector<Rational> four;
    for (const auto& s : antiderivatives(Rational(4), 2).solutions) four.push_back(*s.rational);
    o.expect(sorted(four) == sorted({4, Rational(8, 3)}), "y=4");
    o.expect(antiderivatives(Rational(2), 2).solutions.empty(), "y=2^(p-1)");

    long singletons = 0;
    for (auto [p, e] : {std::pair{2L, 2L}, std::pair{2L, 4L}, std::pair{3L, 3L}, std::pair{2L, 6L}, std::pair{3L, 6L}}) {
        for (long c = -500; c <= 500; ++c) {
            auto sols = solve_increment_equation(ExtendedValuation(c, e), p);
            if (sols.empty()) continue;
            long kmin = decompose(sols.front(), p).k;
            for (const auto& v : sols) kmin = std::min(kmin, decompose(v, p).k);
            if (kmin >= 0) continue;
            ++singletons;
            o.expect(sols.size() == 1, "k<0 target " + std::to_string(c) + "/" + std::to_string(e));
        }
    }
    o.detail << targets << " random targets vs brute force, " << singletons << " k<0 targets, " << o.failures
             << " mismatches";
}

void criterion5(Outcome& o) {
    auto start = std::chrono::steady_clock::now();
    o.detail << "small-k counts:";
    for (long n = 1; n <= 4; ++n) {
        auto c = construct_with_n_antiderivatives(2, n, ConstructionMode::SmallK);
        auto count = antiderivatives(ppf_derivative(c.x0)).solutions.size();
        o.detail << " n=" << n << "->" << count;
        o.expect(count == static_cast<std::size_t>(n), "small-k n=" + std::to_string(n));
    }
    o.detail << "; paper counts:";
    for (long n = 1; n <= 2; ++n) {
        auto c = construct_with_n_antiderivatives(2, n, ConstructionMode::Paper);
        if (n == 2) o.expect(c.x0.exponent() == ((Integer(1) << 64) + 1) * 64, "symbolic x0");
        auto set = antiderivatives(ppf_derivative(c.x0));
        o.detail << " n=" << n << "->" << set.solutions.size();
        o.expect(set.solutions.size() == static_cast<std::size_t>(n), "paper n=" + std::to_string(n));
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(seconds < 5.0, "runtime");

    // C(c_{n+1}) against {c_2, ..., c_n}
    bool c_sets = true;
    for (long n = 1; n <= 4; ++n) {
        auto c = construct_c_sequence(2, 1, n);
        auto members = c_set(c.back(), 1, 2).members;
        c_sets = c_sets && std::vector<Integer>(members.begin() + 1, members.end()) ==
                               std::vector<Integer>(c.begin() + 1, c.end() - 1);
    }
    o.expect(c_sets, "C(x0) sets");
    o.detail << "; C(x0) sets " << (c_sets ? "match" : "differ");

    o.detail << "; minimal-k (k0=2) counts:";
    for (long n = 1; n <= 3; ++n) {
        auto c = construct_with_n_antiderivatives(2, n, ConstructionMode::MinimalK);
        o.detail << " n=" << n << "->" << antiderivatives(ppf_derivative(c.x0)).solutions.size();
    }
    o.detail << "; " << std::fixed << std::setprecision(3) << seconds << "s";
}

void criterion6(Outcome& o) {
    oracle::Rng rng(0xacce0006);
    auto ds = squarefree_range(500);
    for (int t = 0; t < 1000; ++t) {
        long D = rng.pick(ds);
        long p = rng.uniform(2, 500);
        while (!oracle::is_prime(p)) p = rng.uniform(2, 500);
        auto s = splitting(QuadraticField(D), p);
        o.expect(s.e * s.f * s.g == 2, "efg");
    }
    for (long D : squarefree_range(200)) {
        bool inert = splitting(QuadraticField(D), 2).type == SplitType::Inert;
        o.expect(inert == (mod(D, 8) == 5), "2 inert at D=" + std::to_string(D));
    }
    auto fields = squarefree_range(300);
    for (int f = 0; f < 20; ++f) {
        QuadraticField K(rng.pick(fields));
        for (int t = 0; t < 1000; ++t) {
            Rational x = rng.rational(5000);
            o.expect(d_K(QuadraticElement(K, x)) == QuadraticElement(K, oracle::d_full(x)), "d_K on Q");
        }
    }
    QuadraticField Qi(-1);
    o.expect(d_K(QuadraticElement(Qi, 2)) == QuadraticElement(Qi, 1), "d_K(2)");
    o.expect(d_K(QuadraticElement(Qi, 1, 1)) == QuadraticElement(Qi, Rational(1, 4), Rational(1, 4)), "d_K(1+i)");
    long sums = 0;
    while (sums < 1000) {
        QuadraticField K(rng.pick(fields));
        long p = rng.pick(std::vector<long>{2, 3, 5, 7, 11, 13});
        if (splitting(K, p).type != SplitType::Split) continue;
        QuadraticElement x(K, Rational(rng.uniform(-500, 500)) / rng.uniform(1, 40), rng.uniform(-500, 500));
        if (x.is_zero()) continue;
        auto total = ideal_valuation(x, {p, IdealSlot::Plus}) + ideal_valuation(x, {p, IdealSlot::Minus});
        o.expect(total == ExtendedValuation(oracle::valuation(x.norm(), Integer(p))), "conjugate sum");
        ++sums;
    }
    o.detail << o.checks << " checks, " << o.failures << " failures";
}

void criterion7(Outcome& o) {
    auto Q = rational_ld_image();
    std::vector<Integer> primes;
    for (long p = 2; p < 200; ++p) {
        if (oracle::is_prime(p)) primes.push_back(p);
    }
    long fields = 0;
    for (long D : squarefree_range(200)) {
        ++fields;
        auto G = ld_image_generators(QuadraticField(D), 200);
        long m2 = G.m(2);
        o.expect(m2 == (mod(D, 8) == 5 ? 1 : 2), "m(2) at D=" + std::to_string(D));
        auto h = height_vector(G, primes), hq = height_vector(Q, primes);
        std::vector<Integer> differ;
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (h[i] != hq[i]) differ.push_back(primes[i]);
        }
        auto [iso, witness] = groups_isomorphic(Q, G);
        o.expect(iso, "isomorphic");
        o.expect(witness == differ, "witness");
        o.expect(witness.empty() || witness == std::vector<Integer>{2}, "witness is [] or [2]");
    }
    o.detail << fields << " fields, " << o.failures << " failures";
}

void criterion8(Outcome& o) {
    oracle::Rng rng(0xacce0008);
    for (int t = 0; t < 200; ++t) {
        Rational x = rng.nonzero_rational(10000);
        long p = rng.pick(std::vector<long>{2, 3, 5});
        auto r = continuity_probe(RationalMap::partial(p), x, Generator{}, 20, p);
        Rational dx = oracle::d_partial(x, p);
        for (const auto& row : r.rows) {
            bool ok = dx == 0 ? row.out_val.is_infinite()
                              : row.out_val == ExtendedValuation(oracle::valuation(dx, Integer(p)) + row.i);
            o.expect(ok, "continuity at " + to_string(x));
        }
    }
    auto w = discontinuity_witness(PrimeSet{3}, 2, 1, 12);
    for (const auto& row : w.rows) {
        o.expect(row.out_val == ExtendedValuation(1), "discont output");
        o.expect(row.in_val >= ExtendedValuation(row.i), "discont input");
    }
    o.expect(w.rows.size() == 12, "discont rows");

    auto s = strict_diff_probe(RationalMap::partial(2), 12, 20, 2);
    o.expect(ld_partial(12, 2) == 1, "ld(12)");
    for (const auto& row : s.rows) o.expect(row.aux == Rational(1), "Phi at 12");
    for (const auto& v : s.params["phi2"]) o.expect(v == "0", "Phi2 at 12");

    auto z = strict_diff_probe(RationalMap::partial(2), 0, 20, 2);
    std::set<ExtendedValuation> vals;
    for (const auto& row : z.rows) {
        Rational expected = Rational((row.i + 1) * 2 - row.i) / 2;
        o.expect(row.aux == expected, "Phi at 0");
        o.expect((row.i % 2 == 1) == (row.out_val == ExtendedValuation(-1)), "parity pattern");
        vals.insert(row.out_val);
    }
    o.expect(vals.size() >= 2, "distinct valuations at 0");
    o.detail << o.checks << " checks, " << o.failures << " failures";
}

void criterion9(Outcome& o) {
    oracle::Rng rng(0xacce0009);
    const PrimeSet T{2, 3, 5};
    const std::vector<long> primes{2, 3, 5, 7};
    long f_full = 0, f_partial = 0, f_sub = 0, f_K = 0;
    for (int t = 0; t < 10000; ++t) {
        Rational x = rng.rational(5000), y = rng.rational(5000);
        long p = rng.pick(primes);
        if (d_full(x * y) != d_full(x) * y + x * d_full(y)) ++f_full;
        if (d_partial(x * y, p) != d_partial(x, p) * y + x * d_partial(y, p)) ++f_partial;
        if (d_sub(x * y, T) != d_sub(x, T) * y + x * d_sub(y, T)) ++f_sub;
    }
    auto ds = squarefree_range(100);
    for (int t = 0; t < 10000; ++t) {
        QuadraticField K(rng.pick(ds));
        auto elem = [&] {
            while (true) {
                QuadraticElement e(K, Rational(rng.uniform(-80, 80)) / rng.uniform(1, 20), rng.uniform(-80, 80));
                if (!e.is_zero()) return e;
            }
        };
        auto x = elem(), y = elem();
        if (!(d_K(x * y) == d_K(x) * y + x * d_K(y))) ++f_K;
    }
    o.expect(f_full + f_partial + f_sub + f_K == 0);
    o.detail << "failures: d_full " << f_full << ", d_partial " << f_partial << ", d_sub " << f_sub << ", d_K "
             << f_K << " (10^4 pairs each)";
}

void criterion10(Outcome& o) {
    for (long p : {2L, 3L}) {
        for (unsigned long n = 2; n <= 40; ++n) {
            o.expect(d_partial(backward_chain_term(p, n), p) == backward_chain_term(p, n - 1),
                     "p=" + std::to_string(p) + " n=" + std::to_string(n));
        }
    }
    o.detail << o.checks << " links, " << o.failures << " failures";
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria{
    {"worked constants", criterion1},
    {"dynamics trichotomy", criterion2},
    {"predictor exactness", criterion3},
    {"anti-derivative solver", criterion4},
    {"exactly-n construction", criterion5},
    {"quadratic fields", criterion6},
    {"ld images", criterion7},
    {"continuity lab", criterion8},
    {"Leibniz suites", criterion9},
    {"backward chain", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    std::size_t only = 0;
    if (argc > 1) only = std::stoul(argv[1]);
    if (only > kCriteria.size()) {
        std::fprintf(stderr, "criteria are numbered 1..%zu\n", kCriteria.size());
        return 2;
    }
    bool all = true;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        if (only != 0 && only != i + 1) continue;
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            kCriteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string detail = o.detail.str();
        if (!o.first_failure.empty()) detail += "; first failure: " + o.first_failure;
        std::printf("criterion %zu: %s  %s  [%s] (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                    kCriteria[i].first.c_str(), detail.c_str(), seconds);
        all = all && o.pass;
    }
    std::fflush(stdout);
    return all ? 0 : 1;
}
