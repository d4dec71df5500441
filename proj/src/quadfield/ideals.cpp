#include <numeric>

#include "arithderiv/quadfield.hpp"

namespace arithderiv {

namespace {

void check_slot(const QuadraticField& K, const PrimeIdealRef& P) {
    bool split = splitting(K, P.p).type == SplitType::Split;
    if (split == (P.slot == IdealSlot::Only)) {
        throw DomainError("ideal " + P.to_string() + " does not match the splitting of " +
                          to_string(P.p) + " in Q(sqrt(" + to_string(K.D()) + "))");
    }
}

// Valuation at a split prime through the embedding sqrt D -> r into Q_p. With
// x' = d x integral, t = nu_p(a' + b' r) and its conjugate are both
// nonnegative and sum to nu_p(N(x')), so p-adic precision nu_p(N(x')) + 1 is
// exact.
ExtendedValuation split_valuation(const QuadraticElement& x, const PrimeIdealRef& P) {
    const Integer& p = P.p;
    Integer d;
    mpz_lcm(d.get_mpz_t(), x.a().get_den().get_mpz_t(), x.b().get_den().get_mpz_t());
    Integer a = x.a().get_num() * (d / x.a().get_den());
    Integer b = x.b().get_num() * (d / x.b().get_den());
    Integer norm = a * a - x.field().D() * b * b;
    long n = valuation(norm, p);
    unsigned long m = static_cast<unsigned long>(n) + 1;
    Integer modulus = ipow(p, m);
    Integer r = sqrt_mod_lift(x.field().D(), p, m);
    if (P.slot == IdealSlot::Minus) r = mod_floor(-r, modulus);
    Integer image = mod_floor(a + b * r, modulus);
    long t = image == 0 ? n : valuation(image, p);
    return ExtendedValuation(Integer(t - valuation(d, p)));
}

}  // namespace

ExtendedValuation ideal_valuation(const QuadraticElement& x, const PrimeIdealRef& P) {
    if (x.is_zero()) throw DomainError("valuation of 0");
    require_prime(P.p);
    check_slot(x.field(), P);
    auto s = splitting(x.field(), P.p);
    long n = valuation(x.norm(), P.p);
    switch (s.type) {
        case SplitType::Inert: return ExtendedValuation(Integer(n / 2));
        case SplitType::Ramified: return ExtendedValuation(Integer(n), 2);
        case SplitType::Split: return split_valuation(x, P);
    }
    return {};
}

namespace {

Rational weight(const QuadraticElement& x, const PrimeIdealRef& P) {
    auto v = ideal_valuation(x, P);
    if (v.is_zero()) return 0;
    return v.value() / Rational(P.p * splitting(x.field(), P.p).g);
}

}  // namespace

Rational ld_K(const QuadraticElement& x) {
    if (x.is_zero()) throw DomainError("logarithmic derivative of 0");
    Rational sum = 0;
    for (const auto& p : support(x.norm())) {
        for (const auto& P : primes_above(x.field(), p)) sum += weight(x, P);
    }
    return sum;
}

Rational ld_K_sub(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T) {
    if (x.is_zero()) throw DomainError("logarithmic derivative of 0");
    Rational sum = 0;
    for (const auto& P : T) sum += weight(x, P);
    return sum;
}

QuadraticElement d_K(const QuadraticElement& x) {
    if (x.is_zero()) return x;
    return x * ld_K(x);
}

QuadraticElement d_K_sub(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T) {
    if (x.is_zero()) return x;
    return x * ld_K_sub(x, T);
}

}  // namespace arithderiv
