#include <algorithm>

#include "arithderiv/qderiv.hpp"

namespace arithderiv {

PrimeSet::PrimeSet(std::vector<Integer> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw DomainError("prime set must be nonempty");
    std::sort(primes_.begin(), primes_.end());
    if (std::adjacent_find(primes_.begin(), primes_.end()) != primes_.end()) {
        throw DomainError("prime set has repeated entries");
    }
    for (const auto& p : primes_) require_prime(p);
}

PrimeSet::PrimeSet(std::initializer_list<long> primes)
    : PrimeSet(std::vector<Integer>(primes.begin(), primes.end())) {}

PrimeSet PrimeSet::parse(std::string_view text) {
    std::vector<Integer> primes;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        primes.push_back(parse_integer(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return PrimeSet(std::move(primes));
}

bool PrimeSet::contains(const Integer& p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
}

Rational d_partial(const Rational& x, const Integer& p) {
    require_prime(p);
    if (x == 0) return 0;
    long v = valuation(x, p);
    if (v == 0) return 0;
    return x * v / Rational(p);
}

Rational d_sub(const Rational& x, const PrimeSet& T) {
    if (x == 0) return 0;
    Rational sum = 0;
    for (const auto& p : T.primes()) {
        long v = valuation(x, p);
        if (v != 0) sum += Rational(v) / Rational(p);
    }
    return x * sum;
}

Rational ld_full(const Rational& x) {
    if (x == 0) throw DomainError("logarithmic derivative of 0");
    Rational sum = 0;
    for (const auto& p : support(x)) sum += Rational(valuation(x, p)) / Rational(p);
    return sum;
}

Rational d_full(const Rational& x) {
    if (x == 0) return 0;
    return x * ld_full(x);
}

Rational ld_partial(const Rational& x, const Integer& p) {
    require_prime(p);
    if (x == 0) throw DomainError("logarithmic derivative of 0");
    return Rational(valuation(x, p)) / Rational(p);
}

Rational backward_chain(const Integer& p, unsigned long m, Parity parity) {
    require_prime(p);
    Integer p2 = p * p;
    Rational denominator(ipow(p2 + 1, m));
    // There is no a_0; (m = 0, Even) names the head a_1 of the chain.
    if (parity == Parity::Odd || m == 0) return Rational(ipow(p, p2.get_ui())) / denominator;
    return Rational(ipow(p, p2.get_ui() + 1)) / denominator;
}

Rational backward_chain_term(const Integer& p, unsigned long n) {
    if (n == 0) throw DomainError("the chain starts at a_1");
    return n % 2 == 1 ? backward_chain(p, (n - 1) / 2, Parity::Odd)
                      : backward_chain(p, n / 2, Parity::Even);
}

}  // namespace arithderiv
