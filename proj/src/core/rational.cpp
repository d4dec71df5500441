#include "arithderiv/core.hpp"

#include <cctype>

namespace arithderiv {

namespace {

bool valid_integer_text(std::string_view text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) return false;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    }
    return true;
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Integer parse_integer(std::string_view text) {
    if (!valid_integer_text(text)) {
        throw DomainError("malformed integer '" + std::string(text) + "'");
    }
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    auto num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw DomainError("sign belongs on the numerator in '" + std::string(text) + "'");
    }
    return make_rational(num, parse_integer(den_text));
}

std::string to_string(const Integer& n) { return n.get_str(10); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str(10);
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

Integer ipow(const Integer& base, unsigned long exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// ExtendedValuation -----------------------------------------------------------

ExtendedValuation::ExtendedValuation(Integer numerator, long ramification)
    : finite_(true), numerator_(std::move(numerator)), ramification_(ramification) {
    if (ramification_ < 1) throw DomainError("ramification index must be positive");
}

ExtendedValuation ExtendedValuation::infinity(long ramification) {
    ExtendedValuation v(0, ramification);
    v.finite_ = false;
    return v;
}

ExtendedValuation ExtendedValuation::from_value(const Rational& value, long ramification) {
    if (ramification < 1) throw DomainError("ramification index must be positive");
    Rational scaled = value * ramification;
    if (scaled.get_den() != 1) {
        throw DomainError(arithderiv::to_string(value) + " is not in (1/" + std::to_string(ramification) + ")Z");
    }
    return ExtendedValuation(scaled.get_num(), ramification);
}

ExtendedValuation ExtendedValuation::parse(std::string_view text, long ramification) {
    if (text == "inf" || text == "+inf") return infinity(ramification);
    return from_value(parse_rational(text), ramification);
}

Rational ExtendedValuation::value() const {
    if (!finite_) throw DomainError("infinite valuation has no rational value");
    return make_rational(numerator_, ramification_);
}

bool ExtendedValuation::is_integer() const {
    return finite_ && mpz_divisible_ui_p(numerator_.get_mpz_t(), ramification_) != 0;
}

ExtendedValuation ExtendedValuation::shifted(const Integer& n) const {
    if (!finite_) return *this;
    return ExtendedValuation(numerator_ + n * ramification_, ramification_);
}

ExtendedValuation ExtendedValuation::operator+(const ExtendedValuation& other) const {
    if (ramification_ != other.ramification_) throw DomainError("valuations over different ramification");
    if (!finite_ || !other.finite_) return infinity(ramification_);
    return ExtendedValuation(numerator_ + other.numerator_, ramification_);
}

ExtendedValuation ExtendedValuation::operator-(const ExtendedValuation& other) const {
    if (ramification_ != other.ramification_) throw DomainError("valuations over different ramification");
    if (!finite_ || !other.finite_) throw DomainError("difference with an infinite valuation");
    return ExtendedValuation(numerator_ - other.numerator_, ramification_);
}

std::string ExtendedValuation::to_string() const {
    if (!finite_) return "inf";
    if (ramification_ == 1) return numerator_.get_str(10);
    return numerator_.get_str(10) + "/" + std::to_string(ramification_);
}

bool ExtendedValuation::operator==(const ExtendedValuation& other) const {
    if (ramification_ != other.ramification_ || finite_ != other.finite_) return false;
    return !finite_ || numerator_ == other.numerator_;
}

std::strong_ordering ExtendedValuation::operator<=>(const ExtendedValuation& other) const {
    if (!finite_ || !other.finite_) {
        if (finite_ == other.finite_) return std::strong_ordering::equal;
        return finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    Integer lhs = numerator_ * other.ramification_;
    Integer rhs = other.numerator_ * ramification_;
    int c = cmp(lhs, rhs);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (ramification_ != other.ramification_) {
        return ramification_ < other.ramification_ ? std::strong_ordering::less
                                                   : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

}  // namespace arithderiv
