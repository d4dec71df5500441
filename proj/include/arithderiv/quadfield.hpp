#pragma once

// Quadratic fields Q(sqrt D): element arithmetic, splitting of rational primes,
// valuations at prime ideals, the arithmetic derivative D_K and its
// logarithmic image.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arithderiv/core.hpp"

namespace arithderiv {

class QuadraticField {
public:
    // D squarefree, D != 0, 1.
    explicit QuadraticField(Integer D);

    const Integer& D() const noexcept { return D_; }
    // D when D = 1 (mod 4), 4D otherwise.
    const Integer& delta() const noexcept { return delta_; }
    bool operator==(const QuadraticField& other) const { return D_ == other.D_; }

private:
    Integer D_;
    Integer delta_;
};

// a + b sqrt(D).
class QuadraticElement {
public:
    QuadraticElement(QuadraticField field, Rational a, Rational b = 0);
    // "a,b" with rational a and b.
    static QuadraticElement parse(const QuadraticField& field, std::string_view text);

    const QuadraticField& field() const noexcept { return field_; }
    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    // a^2 - D b^2.
    Rational norm() const;
    Rational trace() const;
    QuadraticElement conjugate() const;
    // Throws DomainError for 0.
    QuadraticElement inverse() const;

    QuadraticElement operator+(const QuadraticElement& o) const;
    QuadraticElement operator-(const QuadraticElement& o) const;
    QuadraticElement operator*(const QuadraticElement& o) const;
    QuadraticElement operator/(const QuadraticElement& o) const;
    QuadraticElement operator*(const Rational& q) const;
    bool operator==(const QuadraticElement& o) const;

    // "a", "b*sqrt(D)" or "a+b*sqrt(D)".
    std::string to_string() const;

private:
    void require_same_field(const QuadraticElement& o) const;

    QuadraticField field_;
    Rational a_;
    Rational b_;
};

enum class SplitType { Split, Inert, Ramified };
std::string to_string(SplitType type);

struct SplittingData {
    Integer p;
    int e = 1;
    int f = 1;
    int g = 1;
    SplitType type = SplitType::Split;
};

SplittingData splitting(const QuadraticField& K, const Integer& p);

enum class IdealSlot { Only, Plus, Minus };
std::string to_string(IdealSlot slot);

// For split p, Plus is the ideal (p, sqrt D - r) where r is the canonical root
// of D modulo powers of p (see sqrt_mod_lift), Minus the one for -r.
struct PrimeIdealRef {
    Integer p;
    IdealSlot slot = IdealSlot::Only;

    bool operator==(const PrimeIdealRef& o) const { return p == o.p && slot == o.slot; }
    std::string to_string() const;
};

// Every prime ideal above p in K.
std::vector<PrimeIdealRef> primes_above(const QuadraticField& K, const Integer& p);

// Normalized so that nu_P(p) = 1; ramified values live in (1/2)Z.
ExtendedValuation ideal_valuation(const QuadraticElement& x, const PrimeIdealRef& P);

// x * sum over P | x of nu_P(x) / (p g(p, K)).
QuadraticElement d_K(const QuadraticElement& x);
// Same sum restricted to the prime ideals in T.
QuadraticElement d_K_sub(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T);
// d_K(x)/x, always rational. Throws DomainError for 0.
Rational ld_K(const QuadraticElement& x);
Rational ld_K_sub(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T);

// The subgroup of Q generated by 1/p^m(p) over all primes p; primes missing
// from `exceptional` have m(p) = 1.
struct GroupDescription {
    std::map<Integer, long> exceptional;

    long m(const Integer& p) const;
    // q lies in the group iff nu_p(den q) <= m(p) for every p.
    bool contains(const Rational& q) const;
};

// m(p) = 1 + nu_p(2) - nu_p(f(p, K)), recorded for primes up to prime_bound
// where it differs from 1.
GroupDescription ld_image_generators(const QuadraticField& K, const Integer& prime_bound);
// <1/p : p prime>, the image of ld over Q.
GroupDescription rational_ld_image();

std::vector<long> height_vector(const GroupDescription& G, const std::vector<Integer>& primes);

// Two such groups are always isomorphic; the witness lists the primes where the
// heights of 1 differ.
std::pair<bool, std::vector<Integer>> groups_isomorphic(const GroupDescription& G1,
                                                        const GroupDescription& G2);

struct LocalSplitting {
    long e = 1;
    long f = 1;
    long g = 1;
};

// D_K(x) for rational x in an abstract Galois field of degree n described by
// splitting data; primes without data split completely. Throws DomainError
// when the data disagree on n.
Rational d_abstract_rational(const Rational& x, const std::map<Integer, LocalSplitting>& data);

}  // namespace arithderiv
