#pragma once

// Anti-partial derivatives: every x with D_p(x) = y, the primitive one, the
// set C(x0) and the explicit family with exactly n anti-partial derivatives.

#include <optional>
#include <string>
#include <vector>

#include "arithderiv/core.hpp"
#include "arithderiv/qderiv.hpp"

namespace arithderiv {

struct AntiderivativeSolution {
    ExtendedValuation valuation;       // v = nu_p(x)
    PrimePowerForm element;            // x = y * p / v
    std::optional<Rational> rational;  // x itself when small enough to materialize
    Rational b;                        // v = b * p^k
    long k = 0;
    std::optional<Integer> c;          // index in C(x0) relative to the primitive solution
};

struct AntiderivativeSet {
    // y = 0: every unit and 0 itself differentiate to 0; `solutions` is empty.
    bool all_units_and_zero = false;
    std::vector<AntiderivativeSolution> solutions;  // increasing k, then increasing v
};

// All v in (1/e)Z \ {0} with v + nu_p(v) - 1 = w, in increasing order.
std::vector<ExtendedValuation> solve_increment_equation(const ExtendedValuation& w, const Integer& p);

AntiderivativeSet antiderivatives(const PrimePowerForm& y, long e = 1);
AntiderivativeSet antiderivatives(const Rational& y, const Integer& p, long e = 1);

// Solution with minimal k; nullopt when there is none. Throws DomainError for y = 0.
std::optional<AntiderivativeSolution> primitive_antiderivative(const PrimePowerForm& y, long e = 1);
std::optional<AntiderivativeSolution> primitive_antiderivative(const Rational& y, const Integer& p,
                                                               long e = 1);

struct CSet {
    Integer b0;
    long k0 = 0;
    std::vector<Integer> members;  // ascending, always starts with 0
};

// {c >= 0 : nu_p(b0 - c) = p^k0 * c}; requires nu_p(b0) = 0.
CSet c_set(const Integer& b0, long k0, const Integer& p);

// c_1 = 0, c_i = p^(p^k c_{i-1}) + c_{i-1}, returned as c_1 .. c_{n+1}.
// Throws CapacityError naming the first index whose power would exceed 2^20 bits.
std::vector<Integer> construct_c_sequence(const Integer& p, long k, long n);

// p + p^2 + ... + p^m for m >= 2.
Integer construct_k0(const Integer& p, long m);

// True when no 0 <= k < k0 has nu_p(k0 - k) = k, i.e. every x0 with
// nu_p(nu_p(x0)) = k0 is the primitive anti-partial derivative of D_p(x0).
bool k0_forces_primitive(const Integer& p, long k0);
// Smallest k0 >= 1 with k0_forces_primitive (2 for p = 2, p for odd p).
long minimal_primitive_k0(const Integer& p);

// Paper (the CLI mode name): k0 = p + p^2. SmallK: k0 = 1. MinimalK: k0 = minimal_primitive_k0(p).
enum class ConstructionMode { Paper, SmallK, MinimalK };

struct Construction {
    PrimePowerForm x0;
    Integer b0;
    long k0 = 0;
};

// x0 = p^(b0 p^k0) with b0 = c_{n+1} built for k = k0.
Construction construct_with_n_antiderivatives(const Integer& p, long n, ConstructionMode mode);

// Independent oracle: every integer v in [lo, hi], v != 0, with D_p(y p / v) = y,
// evaluated directly on rationals. Returned in increasing v.
std::vector<Rational> brute_force_antiderivatives(const Rational& y, const Integer& p, long lo, long hi);

}  // namespace arithderiv
