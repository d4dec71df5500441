#include "arithderiv/qderiv.hpp"

namespace arithderiv {

namespace {

// Removes every factor of p from the unit and returns how many were removed
// (negative when p divided the denominator).
long strip_prime(Rational& unit, const Integer& p) {
    long v = valuation(unit, p);
    if (v > 0) {
        Integer num;
        mpz_remove(num.get_mpz_t(), unit.get_num().get_mpz_t(), p.get_mpz_t());
        unit = make_rational(num, unit.get_den());
    } else if (v < 0) {
        Integer den;
        mpz_remove(den.get_mpz_t(), unit.get_den().get_mpz_t(), p.get_mpz_t());
        unit = make_rational(unit.get_num(), den);
    }
    return v;
}

}  // namespace

PrimePowerForm PrimePowerForm::zero(Integer p) {
    require_prime(p);
    PrimePowerForm f;
    f.p_ = std::move(p);
    return f;
}

PrimePowerForm::PrimePowerForm(Integer p, Rational unit, Integer exponent)
    : p_(std::move(p)), unit_(std::move(unit)), exponent_(std::move(exponent)), is_zero_(false) {
    require_prime(p_);
    if (unit_ == 0) {
        is_zero_ = true;
        exponent_ = 0;
        return;
    }
    exponent_ += strip_prime(unit_, p_);
}

PrimePowerForm PrimePowerForm::from_rational(const Rational& x, Integer p) {
    if (x == 0) return zero(std::move(p));
    return PrimePowerForm(std::move(p), x, 0);
}

PrimePowerForm PrimePowerForm::parse(std::string_view text, const Integer& p) {
    auto caret = text.find('^');
    if (caret == std::string_view::npos) return from_rational(parse_rational(text), p);

    auto exponent = parse_integer(text.substr(caret + 1));
    auto head = text.substr(0, caret);
    Rational unit = 1;
    auto star = head.rfind('*');
    if (star != std::string_view::npos) {
        unit = parse_rational(head.substr(0, star));
        head = head.substr(star + 1);
    }
    if (parse_integer(head) != p) {
        throw DomainError("prime-power base '" + std::string(head) + "' does not match p = " +
                          arithderiv::to_string(p));
    }
    return PrimePowerForm(p, unit, exponent);
}

ExtendedValuation PrimePowerForm::valuation() const {
    if (is_zero_) return ExtendedValuation::infinity();
    return ExtendedValuation(exponent_);
}

bool PrimePowerForm::materializable() const {
    return is_zero_ || abs(exponent_) <= kMaxMaterializedExponent;
}

Rational PrimePowerForm::materialize() const {
    if (is_zero_) return 0;
    if (!materializable()) {
        throw CapacityError("exponent " + arithderiv::to_string(exponent_) +
                            " is too large to materialize");
    }
    Integer power = ipow(p_, Integer(abs(exponent_)).get_ui());
    return exponent_ >= 0 ? Rational(unit_ * power) : Rational(unit_ / power);
}

std::string PrimePowerForm::to_string() const {
    if (is_zero_) return "0";
    return arithderiv::to_string(unit_) + "*" + arithderiv::to_string(p_) + "^" +
           arithderiv::to_string(exponent_);
}

std::string PrimePowerForm::display() const {
    if (materializable() && abs(exponent_) <= 4096) return arithderiv::to_string(materialize());
    return to_string();
}

PrimePowerForm PrimePowerForm::operator*(const PrimePowerForm& other) const {
    if (p_ != other.p_) throw DomainError("prime-power forms over different primes");
    if (is_zero_ || other.is_zero_) return zero(p_);
    return PrimePowerForm(p_, unit_ * other.unit_, exponent_ + other.exponent_);
}

bool PrimePowerForm::operator==(const PrimePowerForm& other) const {
    if (p_ != other.p_ || is_zero_ != other.is_zero_) return false;
    return is_zero_ || (unit_ == other.unit_ && exponent_ == other.exponent_);
}

PrimePowerForm ppf_derivative(const PrimePowerForm& f) {
    if (f.is_zero() || f.exponent() == 0) return PrimePowerForm::zero(f.prime());
    const Integer& v = f.exponent();
    long k = valuation(v, f.prime());
    Integer b = v;
    if (k > 0) mpz_divexact(b.get_mpz_t(), v.get_mpz_t(), ipow(f.prime(), k).get_mpz_t());
    return PrimePowerForm(f.prime(), f.unit() * b, v + k - 1);
}

}  // namespace arithderiv
