#pragma once

// Exact arithmetic primitives shared by every other module: rationals,
// factorization, p-adic valuations with an explicit ramification index, and
// the modular helpers (Kronecker symbol, Hensel-lifted square roots, CRT).

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "arithderiv/error.hpp"

namespace arithderiv {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator coprime with a positive denominator
// after every arithmetic operation.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

// Accepts "a" or "a/b" with optional sign; throws DomainError on malformed
// input or zero denominator.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& n);
// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& x);

Integer ipow(const Integer& base, unsigned long exponent);
// Nonnegative residue of a modulo m (m > 0).
Integer mod_floor(const Integer& a, const Integer& m);

// Value in (1/e)Z ∪ {+inf}, stored as numerator/e with e kept explicit so that
// half-integral valuations at ramified primes stay exact.
class ExtendedValuation {
public:
    ExtendedValuation() = default;
    explicit ExtendedValuation(Integer numerator, long ramification = 1);

    static ExtendedValuation infinity(long ramification = 1);
    // Throws DomainError unless value lies in (1/e)Z.
    static ExtendedValuation from_value(const Rational& value, long ramification = 1);
    // Parses "inf", "c" or "c/d"; the reduced denominator must divide e.
    static ExtendedValuation parse(std::string_view text, long ramification = 1);

    bool finite() const noexcept { return finite_; }
    bool is_infinite() const noexcept { return !finite_; }
    const Integer& numerator() const noexcept { return numerator_; }
    long ramification() const noexcept { return ramification_; }

    // Exact value; throws DomainError when infinite.
    Rational value() const;
    bool is_zero() const { return finite_ && numerator_ == 0; }
    bool is_integer() const;

    // v + n for an integer n; +inf stays +inf.
    ExtendedValuation shifted(const Integer& n) const;
    // Same-ramification sum and difference (+inf absorbs in the sum).
    ExtendedValuation operator+(const ExtendedValuation& other) const;
    ExtendedValuation operator-(const ExtendedValuation& other) const;

    // "inf", "c" when e = 1, "c/e" otherwise (numerator over e, unreduced).
    std::string to_string() const;

    bool operator==(const ExtendedValuation& other) const;
    std::strong_ordering operator<=>(const ExtendedValuation& other) const;

private:
    bool finite_ = true;
    Integer numerator_ = 0;
    long ramification_ = 1;
};

struct Factorization {
    int sign = 1;
    std::map<Integer, unsigned long> factors;

    Integer product() const;
};

bool is_prime(const Integer& n);
void require_prime(const Integer& p);

// Trial division to 10^6, then Pollard-Brent on the composite remainder.
Factorization factorize(const Integer& n);

// Exponent of p in n (n != 0), without a primality check on p.
long valuation(const Integer& n, const Integer& p);
// Exponent of p in x (x != 0), without a primality check on p.
long valuation(const Rational& x, const Integer& p);

// nu_p(x); +inf iff x = 0. Throws DomainError when p is not prime.
ExtendedValuation nu(const Rational& x, const Integer& p);

// Primes dividing numerator or denominator of x, ascending.
std::vector<Integer> support(const Rational& x);

// Kronecker symbol (a|n); n = 0 is a DomainError.
int kronecker(const Integer& a, const Integer& n);

// r with r^2 ≡ D (mod p^m), 0 <= r < p^m. Odd p: r reduces to the base root in
// [0, (p-1)/2]. p = 2: D ≡ 1 (mod 8) and r is the 2-adic root ≡ 1 (mod 4)
// truncated to m bits. Throws ResidueError when no root exists.
Integer sqrt_mod_lift(const Integer& D, const Integer& p, unsigned long m);

struct Residue {
    Integer value;
    Integer modulus;
};

// Unique solution in [0, prod moduli). Throws DomainError for nonpositive or
// non-coprime moduli.
Integer crt(std::span<const Residue> residues);

}  // namespace arithderiv
