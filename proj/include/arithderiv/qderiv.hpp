#pragma once

// Arithmetic derivative, partial derivatives and subderivatives over Q, plus a
// symbolic prime-power representation for elements whose exponents are too
// large to materialize.

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "arithderiv/core.hpp"

namespace arithderiv {

// Finite, nonempty, strictly increasing set of primes.
class PrimeSet {
public:
    explicit PrimeSet(std::vector<Integer> primes);
    PrimeSet(std::initializer_list<long> primes);

    // "2,3,7"
    static PrimeSet parse(std::string_view text);

    const std::vector<Integer>& primes() const noexcept { return primes_; }
    bool contains(const Integer& p) const;
    std::size_t size() const noexcept { return primes_.size(); }

private:
    std::vector<Integer> primes_;
};

// D(x) = x * sum_p nu_p(x)/p, D(0) = 0.
Rational d_full(const Rational& x);
// D_p(x) = x * nu_p(x)/p, zero when x = 0 or p does not divide x.
Rational d_partial(const Rational& x, const Integer& p);
// D_T(x) = sum over p in T of D_p(x); primes not dividing x contribute 0.
Rational d_sub(const Rational& x, const PrimeSet& T);
// nu_p(x)/p; throws DomainError for x = 0.
Rational ld_partial(const Rational& x, const Integer& p);
// D(x)/x over all primes; throws DomainError for x = 0.
Rational ld_full(const Rational& x);

// Largest exponent magnitude for which a PrimePowerForm may be materialized.
inline constexpr unsigned long kMaxMaterializedExponent = 1ul << 16;

// unit * p^exponent with nu_p(unit) = 0, or the zero element.
class PrimePowerForm {
public:
    static PrimePowerForm zero(Integer p);
    // Pulls every power of p out of unit; unit = 0 gives the zero form.
    PrimePowerForm(Integer p, Rational unit, Integer exponent);
    // The form of a rational x with respect to p.
    static PrimePowerForm from_rational(const Rational& x, Integer p);
    // "unit*p^exponent", "p^exponent", a plain rational, or "0".
    static PrimePowerForm parse(std::string_view text, const Integer& p);

    const Integer& prime() const noexcept { return p_; }
    const Rational& unit() const noexcept { return unit_; }
    const Integer& exponent() const noexcept { return exponent_; }
    bool is_zero() const noexcept { return is_zero_; }
    // nu_p of the element.
    ExtendedValuation valuation() const;

    bool materializable() const;
    // Throws CapacityError when |exponent| > kMaxMaterializedExponent.
    Rational materialize() const;

    // "unit*p^exponent" with decimal integers; "0" for the zero form.
    std::string to_string() const;
    // Materialized rational when small enough, otherwise to_string().
    std::string display() const;

    PrimePowerForm operator*(const PrimePowerForm& other) const;
    bool operator==(const PrimePowerForm& other) const;

private:
    PrimePowerForm() = default;
    Integer p_ = 2;
    Rational unit_ = 0;
    Integer exponent_ = 0;
    bool is_zero_ = true;
};

// Symbolic D_p: (u, v) -> (u * v / p^nu_p(v), v + nu_p(v) - 1); zero when
// the form is zero or v = 0.
PrimePowerForm ppf_derivative(const PrimePowerForm& f);

enum class Parity { Even, Odd };

// a_{2m} = p^(p^2+1) / (p^2+1)^m (m >= 1) and a_{2m+1} = p^(p^2) / (p^2+1)^m,
// a chain with D_p(a_n) = a_{n-1} starting from a_1 = p^(p^2).
Rational backward_chain(const Integer& p, unsigned long m, Parity parity);
// a_n for n >= 1.
Rational backward_chain_term(const Integer& p, unsigned long n);

}  // namespace arithderiv
