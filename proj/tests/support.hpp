#pragma once

// Independent oracles and seeded generators for the test suites. Nothing here
// calls into the library's valuation, factorization or root-finding code.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Integer = mpz_class;
using Rational = mpq_class;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
    bool coin() { return uniform(0, 1) == 1; }
    template <class T>
    const T& pick(const std::vector<T>& values) {
        return values[static_cast<std::size_t>(uniform(0, static_cast<long>(values.size()) - 1))];
    }

    // Nonzero rational with numerator and denominator in [1, bound].
    Rational nonzero_rational(long bound) {
        Rational q(uniform(1, bound), uniform(1, bound));
        q.canonicalize();
        return coin() ? Rational(-q) : q;
    }
    Rational rational(long bound) { return uniform(0, 9) == 0 ? Rational(0) : nonzero_rational(bound); }

private:
    std::mt19937_64 engine_;
};

// Exponent of p in n != 0 by repeated division.
inline long valuation(Integer n, const Integer& p) {
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline long valuation(const Rational& x, const Integer& p) {
    return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Trial-division factorization of |n| for n fitting a long.
inline std::map<long, long> factor(Integer n) {
    std::map<long, long> out;
    if (n < 0) n = -n;
    long m = n.get_si();
    for (long d = 2; d * d <= m; ++d) {
        while (m % d == 0) {
            ++out[d];
            m /= d;
        }
    }
    if (m > 1) ++out[m];
    return out;
}

// D(x) = x * sum nu_p(x)/p from trial-division factorizations.
inline Rational d_full(const Rational& x) {
    if (x == 0) return 0;
    Rational sum = 0;
    for (auto [p, e] : factor(x.get_num())) sum += Rational(e) / p;
    for (auto [p, e] : factor(x.get_den())) sum -= Rational(e) / p;
    return x * sum;
}

inline Rational d_partial(const Rational& x, long p) {
    if (x == 0) return 0;
    return x * Rational(valuation(x, Integer(p))) / Rational(p);
}

// Valuation dynamics on exact rationals: v -> v + nu_p(v) - 1, nullopt for +inf.
inline std::optional<Rational> inc_step(const std::optional<Rational>& v, long p) {
    if (!v || *v == 0) return std::nullopt;
    return *v + valuation(*v, Integer(p)) - 1;
}

inline std::vector<std::optional<Rational>> nu_sequence(const Rational& v0, long p, std::size_t steps) {
    std::vector<std::optional<Rational>> out{v0};
    while (out.size() <= steps && out.back()) out.push_back(inc_step(out.back(), p));
    return out;
}

struct Cycle {
    bool reaches_infinity = false;
    std::size_t start = 0;
    std::size_t length = 0;
};

// First repeated state by remembering every visited value.
inline std::optional<Cycle> find_cycle(const Rational& v0, long p, std::size_t cap) {
    std::map<Rational, std::size_t> seen;
    std::optional<Rational> v = v0;
    for (std::size_t i = 0; i <= cap; ++i) {
        if (!v) return Cycle{true, i, 1};
        auto it = seen.find(*v);
        if (it != seen.end()) return Cycle{false, it->second, i - it->second};
        seen.emplace(*v, i);
        v = inc_step(v, p);
    }
    return std::nullopt;
}

// Roots of r^2 = D modulo m by exhaustive search.
inline std::vector<Integer> square_roots(const Integer& D, const Integer& m) {
    std::vector<Integer> out;
    Integer target = ((D % m) + m) % m;
    for (Integer r = 0; r < m; ++r) {
        if ((r * r) % m == target) out.push_back(r);
    }
    return out;
}

}  // namespace oracle
