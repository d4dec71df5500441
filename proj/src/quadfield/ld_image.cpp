#include <set>

#include "arithderiv/quadfield.hpp"

namespace arithderiv {

long GroupDescription::m(const Integer& p) const {
    auto it = exceptional.find(p);
    return it == exceptional.end() ? 1 : it->second;
}

bool GroupDescription::contains(const Rational& q) const {
    for (const auto& p : support(Rational(q.get_den()))) {
        if (valuation(q.get_den(), p) > m(p)) return false;
    }
    return true;
}

GroupDescription ld_image_generators(const QuadraticField& K, const Integer& prime_bound) {
    if (prime_bound < 2) throw DomainError("prime bound must be at least 2");
    GroupDescription G;
    for (Integer p = 2; p <= prime_bound; ++p) {
        if (!is_prime(p)) continue;
        long m = 1 + valuation(Integer(2), p) - valuation(Integer(splitting(K, p).f), p);
        if (m != 1) G.exceptional[p] = m;
    }
    return G;
}

GroupDescription rational_ld_image() { return {}; }

std::vector<long> height_vector(const GroupDescription& G, const std::vector<Integer>& primes) {
    std::vector<long> out;
    out.reserve(primes.size());
    for (const auto& p : primes) out.push_back(G.m(p));
    return out;
}

std::pair<bool, std::vector<Integer>> groups_isomorphic(const GroupDescription& G1,
                                                        const GroupDescription& G2) {
    std::set<Integer> keys;
    for (const auto& [p, m] : G1.exceptional) keys.insert(p);
    for (const auto& [p, m] : G2.exceptional) keys.insert(p);
    std::vector<Integer> witness;
    for (const auto& p : keys) {
        if (G1.m(p) != G2.m(p)) witness.push_back(p);
    }
    // Heights differ at finitely many primes and are finite everywhere.
    return {true, witness};
}

Rational d_abstract_rational(const Rational& x, const std::map<Integer, LocalSplitting>& data) {
    long n = 0;
    for (const auto& [p, s] : data) {
        require_prime(p);
        if (s.e < 1 || s.f < 1 || s.g < 1) throw DomainError("splitting data must be positive");
        long product = s.e * s.f * s.g;
        if (n != 0 && product != n) {
            throw DomainError("splitting data disagree on the degree: efg = " + std::to_string(product) +
                              " at " + to_string(p) + " but " + std::to_string(n) + " elsewhere");
        }
        n = product;
    }
    if (n == 0) n = 1;
    if (x == 0) return 0;

    // For rational x every prime above p has nu_P(x) = nu_p(x).
    Rational sum = 0;
    for (const auto& p : support(x)) {
        auto it = data.find(p);
        long g = it == data.end() ? n : it->second.g;
        Rational per_prime = Rational(valuation(x, p)) / Rational(p * g);
        sum += per_prime * g;
    }
    return x * sum;
}

}  // namespace arithderiv
