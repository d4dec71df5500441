#include "arithderiv/quadfield.hpp"

namespace arithderiv {

QuadraticField::QuadraticField(Integer D) : D_(std::move(D)) {
    if (D_ == 0 || D_ == 1) throw DomainError("D must be different from 0 and 1");
    for (const auto& [q, exp] : factorize(D_).factors) {
        if (exp > 1) throw DomainError("D = " + arithderiv::to_string(D_) + " is not squarefree");
    }
    delta_ = mod_floor(D_, 4) == 1 ? D_ : Integer(4 * D_);
}

QuadraticElement::QuadraticElement(QuadraticField field, Rational a, Rational b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}

QuadraticElement QuadraticElement::parse(const QuadraticField& field, std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) return QuadraticElement(field, parse_rational(text));
    return QuadraticElement(field, parse_rational(text.substr(0, comma)),
                            parse_rational(text.substr(comma + 1)));
}

Rational QuadraticElement::norm() const { return a_ * a_ - Rational(field_.D()) * b_ * b_; }

Rational QuadraticElement::trace() const { return 2 * a_; }

QuadraticElement QuadraticElement::conjugate() const { return {field_, a_, -b_}; }

QuadraticElement QuadraticElement::inverse() const {
    if (is_zero()) throw DomainError("0 has no inverse");
    Rational n = norm();
    return {field_, a_ / n, -b_ / n};
}

void QuadraticElement::require_same_field(const QuadraticElement& o) const {
    if (!(field_ == o.field_)) throw DomainError("elements of different quadratic fields");
}

QuadraticElement QuadraticElement::operator+(const QuadraticElement& o) const {
    require_same_field(o);
    return {field_, a_ + o.a_, b_ + o.b_};
}

QuadraticElement QuadraticElement::operator-(const QuadraticElement& o) const {
    require_same_field(o);
    return {field_, a_ - o.a_, b_ - o.b_};
}

QuadraticElement QuadraticElement::operator*(const QuadraticElement& o) const {
    require_same_field(o);
    return {field_, a_ * o.a_ + Rational(field_.D()) * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
}

QuadraticElement QuadraticElement::operator/(const QuadraticElement& o) const {
    require_same_field(o);
    return *this * o.inverse();
}

QuadraticElement QuadraticElement::operator*(const Rational& q) const { return {field_, a_ * q, b_ * q}; }

bool QuadraticElement::operator==(const QuadraticElement& o) const {
    return field_ == o.field_ && a_ == o.a_ && b_ == o.b_;
}

std::string QuadraticElement::to_string() const {
    std::string root = "sqrt(" + arithderiv::to_string(field_.D()) + ")";
    if (b_ == 0) return arithderiv::to_string(a_);
    std::string tail = b_ == 1 ? root : b_ == -1 ? "-" + root : arithderiv::to_string(b_) + "*" + root;
    if (a_ == 0) return tail;
    if (b_ > 0) tail = "+" + tail;
    return arithderiv::to_string(a_) + tail;
}

std::string to_string(SplitType type) {
    switch (type) {
        case SplitType::Split: return "split";
        case SplitType::Inert: return "inert";
        case SplitType::Ramified: return "ramified";
    }
    return "";
}

std::string to_string(IdealSlot slot) {
    switch (slot) {
        case IdealSlot::Only: return "only";
        case IdealSlot::Plus: return "plus";
        case IdealSlot::Minus: return "minus";
    }
    return "";
}

std::string PrimeIdealRef::to_string() const {
    return "(" + arithderiv::to_string(p) + "," + arithderiv::to_string(slot) + ")";
}

SplittingData splitting(const QuadraticField& K, const Integer& p) {
    require_prime(p);
    SplittingData s;
    s.p = p;
    int symbol;
    if (p == 2) {
        long r = mod_floor(K.delta(), 8).get_si();
        symbol = (r == 0 || r == 4) ? 0 : r == 1 ? 1 : -1;
    } else {
        symbol = kronecker(K.delta(), p);
    }
    if (symbol == 0) {
        s.e = 2;
        s.type = SplitType::Ramified;
    } else if (symbol == 1) {
        s.g = 2;
        s.type = SplitType::Split;
    } else {
        s.f = 2;
        s.type = SplitType::Inert;
    }
    return s;
}

std::vector<PrimeIdealRef> primes_above(const QuadraticField& K, const Integer& p) {
    if (splitting(K, p).type == SplitType::Split) return {{p, IdealSlot::Plus}, {p, IdealSlot::Minus}};
    return {{p, IdealSlot::Only}};
}

}  // namespace arithderiv
