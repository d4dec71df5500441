#include "arithderiv/antideriv.hpp"

#include <algorithm>
#include <cmath>

#include "arithderiv/dynamics.hpp"

namespace arithderiv {

namespace {

// Some L with p^L <= m (or -1 for m = 0), cheap even for huge m.
long log_floor_bound(const Integer& m, const Integer& p) {
    if (m < 1) return -1;
    if (p <= 62) {
        // sizeinbase is the digit count or one more
        return static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), static_cast<int>(p.get_si()))) - 2;
    }
    long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
    long pbits = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2));
    return (bits - 1) / pbits;
}

// p^j > magnitude + addend, given safe = log_floor_bound(magnitude, p).
bool power_exceeds(const Integer& p, long j, const Integer& magnitude, long safe, const Integer& addend) {
    if (j <= safe) return false;
    return ipow(p, static_cast<unsigned long>(j)) > magnitude + addend;
}

constexpr long kFilterDepth = 64;

AntiderivativeSolution make_solution(const PrimePowerForm& y, const ExtendedValuation& v) {
    const Integer& p = y.prime();
    auto [b, k] = decompose(v, p);
    PrimePowerForm x(p, y.unit() / v.value(), y.exponent() + 1);
    AntiderivativeSolution s{v, x, std::nullopt, b, k, std::nullopt};
    if (x.materializable()) s.rational = x.materialize();
    return s;
}

}  // namespace

std::vector<ExtendedValuation> solve_increment_equation(const ExtendedValuation& w, const Integer& p) {
    require_prime(p);
    if (!w.finite()) throw DomainError("target valuation +inf belongs to y = 0");
    const long e = w.ramification();
    const Integer E(e);
    const long nu_e = valuation(E, p);

    // v = w + 1 - j has numerator N - e*j over e, and nu_p(v) = j means
    // nu_p(N - e*j) = j + nu_p(e).
    const Integer N = w.numerator() + E;
    std::vector<Integer> powers{1};
    for (long i = 1; i <= kFilterDepth; ++i) powers.push_back(powers.back() * p);
    const Integer residue = mod_floor(N, powers.back());
    const Integer magnitude = abs(w.numerator());
    const long safe = log_floor_bound(magnitude, p);

    std::vector<ExtendedValuation> out;
    for (long j = -nu_e;; ++j) {
        if (j >= 1 && power_exceeds(p, j, magnitude, safe, Integer(E * (j + 1)))) break;
        long depth = std::min(j + nu_e, kFilterDepth);
        if (mod_floor(residue - E * j, powers[depth]) != 0) continue;
        Integer c = N - E * j;
        if (c == 0) continue;
        ExtendedValuation v(c, e);
        if (valuation_order(v, p) == j) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

AntiderivativeSet antiderivatives(const PrimePowerForm& y, long e) {
    if (e < 1) throw DomainError("ramification index must be positive");
    AntiderivativeSet result;
    if (y.is_zero()) {
        result.all_units_and_zero = true;
        return result;
    }
    ExtendedValuation w(y.exponent() * e, e);
    for (const auto& v : solve_increment_equation(w, y.prime())) {
        result.solutions.push_back(make_solution(y, v));
    }
    std::stable_sort(result.solutions.begin(), result.solutions.end(),
                     [](const auto& a, const auto& b) { return a.k < b.k; });

    if (!result.solutions.empty() && result.solutions.front().k >= 0) {
        const long k0 = result.solutions.front().k;
        const Integer step = ipow(y.prime(), static_cast<unsigned long>(k0));
        for (auto& s : result.solutions) {
            Integer diff = s.k - k0;
            if (mpz_divisible_p(diff.get_mpz_t(), step.get_mpz_t())) s.c = diff / step;
        }
    }
    return result;
}

AntiderivativeSet antiderivatives(const Rational& y, const Integer& p, long e) {
    return antiderivatives(PrimePowerForm::from_rational(y, p), e);
}

std::optional<AntiderivativeSolution> primitive_antiderivative(const PrimePowerForm& y, long e) {
    if (y.is_zero()) throw DomainError("the anti-partial derivatives of 0 are all units and 0");
    auto set = antiderivatives(y, e);
    if (set.solutions.empty()) return std::nullopt;
    return set.solutions.front();
}

std::optional<AntiderivativeSolution> primitive_antiderivative(const Rational& y, const Integer& p,
                                                               long e) {
    return primitive_antiderivative(PrimePowerForm::from_rational(y, p), e);
}

CSet c_set(const Integer& b0, long k0, const Integer& p) {
    require_prime(p);
    if (k0 < 0) throw DomainError("k0 must be nonnegative");
    if (b0 == 0 || valuation(b0, p) != 0) throw DomainError("b0 must be prime to p");
    const Integer scale = ipow(p, static_cast<unsigned long>(k0));
    CSet set{b0, k0, {0}};
    for (Integer c = 1;; ++c) {
        Integer exponent = scale * c;
        Integer bound = abs(b0) + c;
        if (exponent > static_cast<long>(mpz_sizeinbase(bound.get_mpz_t(), 2))) break;
        if (ipow(p, exponent.get_ui()) > bound) break;
        if (c != b0 && valuation(Integer(b0 - c), p) == exponent) set.members.push_back(c);
    }
    return set;
}

std::vector<Integer> construct_c_sequence(const Integer& p, long k, long n) {
    require_prime(p);
    if (k < 1 || n < 1) throw DomainError("k and n must be positive");
    const Integer scale = ipow(p, static_cast<unsigned long>(k));
    const double log2p = std::log2(p.get_d());
    constexpr double kMaxBits = 1 << 20;
    std::vector<Integer> c{0};
    for (long i = 2; i <= n + 1; ++i) {
        Integer exponent = scale * c.back();
        if (exponent > static_cast<unsigned long>(kMaxBits) || exponent.get_d() * log2p > kMaxBits) {
            throw CapacityError("c_" + std::to_string(i) + " = p^" + to_string(exponent) +
                                " + c_" + std::to_string(i - 1) + " exceeds 2^20 bits");
        }
        c.push_back(ipow(p, exponent.get_ui()) + c.back());
    }
    return c;
}

Integer construct_k0(const Integer& p, long m) {
    require_prime(p);
    if (m < 2) throw DomainError("m must be at least 2");
    Integer sum = 0, power = 1;
    for (long i = 1; i <= m; ++i) {
        power *= p;
        sum += power;
    }
    return sum;
}

bool k0_forces_primitive(const Integer& p, long k0) {
    require_prime(p);
    if (k0 < 1) return false;
    for (long k = 0; k < k0; ++k) {
        if (valuation(Integer(k0 - k), p) == k) return false;
    }
    return true;
}

long minimal_primitive_k0(const Integer& p) {
    long k0 = 1;
    while (!k0_forces_primitive(p, k0)) ++k0;
    return k0;
}

Construction construct_with_n_antiderivatives(const Integer& p, long n, ConstructionMode mode) {
    require_prime(p);
    if (n < 1) throw DomainError("n must be positive");
    Integer k0 = mode == ConstructionMode::Paper    ? construct_k0(p, 2)
                 : mode == ConstructionMode::SmallK ? Integer(1)
                                                    : Integer(minimal_primitive_k0(p));
    if (!k0.fits_slong_p()) throw CapacityError("k0 does not fit a machine word");
    long k = k0.get_si();
    auto c = construct_c_sequence(p, k, n);
    Integer exponent = c.back() * ipow(p, static_cast<unsigned long>(k));
    return {PrimePowerForm(p, 1, exponent), c.back(), k};
}

std::vector<Rational> brute_force_antiderivatives(const Rational& y, const Integer& p, long lo, long hi) {
    require_prime(p);
    if (y == 0) throw DomainError("brute force needs y != 0");
    std::vector<Rational> out;
    const Rational yp = y * Rational(p);
    for (long v = lo; v <= hi; ++v) {
        if (v == 0) continue;
        Rational x = yp / Rational(v);
        if (d_partial(x, p) == y) out.push_back(x);
    }
    return out;
}

}  // namespace arithderiv
