#include <algorithm>

#include "arithderiv/core.hpp"

namespace arithderiv {

namespace {

Integer powm(const Integer& base, const Integer& exponent, const Integer& modulus) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

// Tonelli-Shanks for odd prime p and a quadratic residue a (0 < a < p).
Integer tonelli_shanks(const Integer& a, const Integer& p) {
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    if (s == 1) return powm(a, (p + 1) / 4, p);

    Integer z = 2;
    while (kronecker(z, p) != -1) ++z;

    Integer c = powm(z, q, p);
    Integer r = powm(a, (q + 1) / 2, p);
    Integer t = powm(a, q, p);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

Integer odd_prime_root(const Integer& D, const Integer& p, unsigned long m) {
    if (kronecker(D, p) != 1) {
        throw ResidueError(to_string(D) + " has no invertible square root modulo " + to_string(p));
    }
    Integer base = tonelli_shanks(mod_floor(D, p), p);
    if (2 * base > p - 1) base = p - base;

    Integer r = base;
    unsigned long precision = 1;
    while (precision < m) {
        precision = std::min(2 * precision, m);
        Integer modulus = ipow(p, precision);
        Integer inv, twice_r = 2 * r;
        mpz_invert(inv.get_mpz_t(), twice_r.get_mpz_t(), modulus.get_mpz_t());
        r = mod_floor(r - (r * r - D) * inv, modulus);
    }
    return r;
}

Integer two_adic_root(const Integer& D, unsigned long m) {
    if (mod_floor(D, 8) != 1) {
        throw ResidueError(to_string(D) + " has no 2-adic square root (needs D ≡ 1 mod 8)");
    }
    // r^2 ≡ D (mod 2^k) with r ≡ 1 (mod 4); fixing bit k-1 lifts to 2^(k+1).
    // Lifting to 2^(m+1) pins r modulo 2^m uniquely.
    Integer r = 1;
    for (unsigned long k = 3; k <= m; ++k) {
        Integer modulus = ipow(Integer(2), k + 1);
        if (mod_floor(r * r - D, modulus) != 0) r += ipow(Integer(2), k - 1);
    }
    return mod_floor(r, ipow(Integer(2), m));
}

}  // namespace

int kronecker(const Integer& a, const Integer& n) {
    if (n == 0) throw DomainError("Kronecker symbol with n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Integer sqrt_mod_lift(const Integer& D, const Integer& p, unsigned long m) {
    require_prime(p);
    if (m == 0) throw DomainError("precision must be positive");
    if (p == 2) return two_adic_root(D, m);
    return odd_prime_root(D, p, m);
}

Integer crt(std::span<const Residue> residues) {
    Integer x = 0, modulus = 1;
    for (const auto& [value, m] : residues) {
        if (m <= 0) throw DomainError("CRT modulus must be positive");
        Integer g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
        if (g != 1) throw DomainError("CRT moduli are not pairwise coprime");
        // x + modulus * s * (value - x) satisfies both congruences.
        Integer combined = modulus * m;
        x = mod_floor(x + modulus * s * (value - x), combined);
        modulus = combined;
    }
    return x;
}

}  // namespace arithderiv
