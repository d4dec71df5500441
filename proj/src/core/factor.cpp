#include <algorithm>
#include <cstdint>
#include <vector>

#include "arithderiv/core.hpp"

namespace arithderiv {

namespace {

constexpr std::uint32_t kTrialBound = 1'000'000;
constexpr int kPrimalityRounds = 64;

struct SmallPrimes {
    std::vector<bool> composite;
    std::vector<std::uint32_t> primes;

    SmallPrimes() : composite(kTrialBound + 1, false) {
        composite[0] = composite[1] = true;
        for (std::uint32_t i = 2; i <= kTrialBound; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= kTrialBound; j += i) composite[j] = true;
        }
    }
};

const SmallPrimes& small_primes() {
    static const SmallPrimes table;
    return table;
}

// Brent's variant of Pollard rho. n is odd, composite and free of factors
// below the trial bound.
Integer pollard_brent(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, q = 1, g = 1, ys;
        unsigned long r = 1;
        const unsigned long m = 128;
        auto f = [&](const Integer& v) {
            Integer t = v * v + c;
            mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            return t;
        };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = x - y;
                    q = q * abs(diff);
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer diff = x - ys;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_composite(const Integer& n, std::map<Integer, unsigned long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Integer d = pollard_brent(n);
    split_composite(d, out);
    split_composite(n / d, out);
}

}  // namespace

Integer Factorization::product() const {
    Integer r = sign;
    for (const auto& [p, e] : factors) r *= ipow(p, e);
    return r;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    if (n <= kTrialBound) return !small_primes().composite[n.get_ui()];
    return mpz_probab_prime_p(n.get_mpz_t(), kPrimalityRounds) > 0;
}

void require_prime(const Integer& p) {
    if (!is_prime(p)) throw DomainError(to_string(p) + " is not prime");
}

Factorization factorize(const Integer& n) {
    if (n == 0) throw DomainError("cannot factor 0");
    Factorization result;
    result.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);

    bool exhausted = true;
    for (std::uint32_t p : small_primes().primes) {
        if (Integer(p) * p > m) {
            exhausted = false;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned long e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            result.factors[Integer(p)] = e;
        }
    }
    if (m == 1) return result;
    // Every remaining factor exceeds the trial bound, so anything below its
    // square is prime.
    if (!exhausted || m < Integer(kTrialBound) * kTrialBound) {
        ++result.factors[m];
        return result;
    }
    split_composite(m, result.factors);
    return result;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw DomainError("valuation of 0 is infinite");
    if (!mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) return 0;
    Integer rest;
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rational& x, const Integer& p) {
    if (x == 0) throw DomainError("valuation of 0 is infinite");
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

ExtendedValuation nu(const Rational& x, const Integer& p) {
    require_prime(p);
    if (x == 0) return ExtendedValuation::infinity();
    return ExtendedValuation(valuation(x, p));
}

std::vector<Integer> support(const Rational& x) {
    std::vector<Integer> primes;
    if (x == 0) return primes;
    for (const auto& [p, e] : factorize(x.get_num()).factors) primes.push_back(p);
    for (const auto& [p, e] : factorize(x.get_den()).factors) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    return primes;
}

}  // namespace arithderiv
