#include "arithderiv/dynamics.hpp"

namespace arithderiv {

long valuation_order(const ExtendedValuation& v, const Integer& p) {
    if (!v.finite() || v.is_zero()) throw DomainError("nu_p of a zero or infinite valuation");
    return valuation(v.numerator(), p) - valuation(Integer(v.ramification()), p);
}

ValuationDecomposition decompose(const ExtendedValuation& v, const Integer& p) {
    long k = valuation_order(v, p);
    Rational scale = k >= 0 ? Rational(ipow(p, k)) : Rational(1, 1) / Rational(ipow(p, -k));
    return {v.value() / scale, k};
}

ExtendedValuation inc_step(const ExtendedValuation& v, const Integer& p, const Integer& offset) {
    if (!v.finite() || v.is_zero()) return ExtendedValuation::infinity(v.ramification());
    return v.shifted(valuation_order(v, p) - 1 - offset);
}

std::vector<ExtendedValuation> nu_sequence(const ExtendedValuation& v0, const Integer& p,
                                           std::size_t steps, const Integer& offset) {
    require_prime(p);
    std::vector<ExtendedValuation> out{v0};
    out.reserve(steps + 1);
    while (out.size() <= steps && out.back().finite()) out.push_back(inc_step(out.back(), p, offset));
    return out;
}

std::vector<Integer> increments(const std::vector<ExtendedValuation>& sequence) {
    std::vector<Integer> out;
    for (std::size_t i = 1; i < sequence.size() && sequence[i].finite(); ++i) {
        Rational d = sequence[i].value() - sequence[i - 1].value();
        out.push_back(d.get_num());
    }
    return out;
}

Segment segment(const Integer& k, const Integer& p) {
    if (k < 1) throw DomainError("segment index must be positive");
    Segment s{k, {k - 1}};
    Integer copies = mod_floor(k - 1, p);
    for (Integer i = 0; i < copies; ++i) s.entries.emplace_back(-1);
    return s;
}

KappaProfile kappa_profile(const ExtendedValuation& v0, const Integer& p) {
    require_prime(p);
    if (!v0.finite()) throw ClassificationError("+inf is eventually +inf; use classify()");
    if (v0.is_integer()) {
        Rational value = v0.value();
        if (value >= 0 && value < Rational(p)) {
            throw ClassificationError(v0.to_string() + " lies in {0..p-1}: eventually +inf; use classify()");
        }
    }
    if (valuation_order(v0, p) < 0) {
        throw ClassificationError(v0.to_string() + " has negative p-adic order: diverges; use classify()");
    }

    // v0 = num/den with p not dividing den, so v0 is a p-adic integer.
    Rational value = v0.value();
    const Integer& num = value.get_num();
    const Integer& den = value.get_den();
    Integer inv_den;
    mpz_invert(inv_den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());

    KappaProfile profile;
    profile.kappa0 = mod_floor(num * inv_den, p);
    Integer kappa = valuation(Integer(num - profile.kappa0 * den), p);
    profile.kappas.push_back(kappa);
    while (kappa > p) {
        Integer shifted = kappa - 1;
        kappa = valuation(Integer(shifted - mod_floor(shifted, p)), p);
        profile.kappas.push_back(kappa);
    }
    profile.N = profile.kappas.size();
    profile.period = profile.kappas.back();
    return profile;
}

const Integer& EventuallyPeriodicSeq::at(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    return cycle[(i - preperiod.size()) % cycle.size()];
}

std::vector<Integer> EventuallyPeriodicSeq::take(std::size_t n) const {
    std::vector<Integer> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
}

EventuallyPeriodicSeq predicted_inc_sequence(const KappaProfile& profile, const Integer& p) {
    if (profile.kappas.empty() || profile.N != profile.kappas.size()) {
        throw DomainError("malformed kappa profile");
    }
    EventuallyPeriodicSeq seq;
    for (Integer i = 0; i < profile.kappa0; ++i) seq.preperiod.emplace_back(-1);
    for (std::size_t i = 0; i + 1 < profile.N; ++i) {
        auto s = segment(profile.kappas[i], p);
        seq.preperiod.insert(seq.preperiod.end(), s.entries.begin(), s.entries.end());
    }
    seq.cycle = segment(profile.kappas.back(), p).entries;
    return seq;
}

std::string Classification::name() const {
    switch (kind) {
        case DynamicsClass::EventuallyZero: return "EventuallyZero";
        case DynamicsClass::EventuallyPeriodic: return "EventuallyPeriodic";
        case DynamicsClass::DivergesToMinusInfinity: return "DivergesToMinusInfinity";
    }
    return "";
}

Classification classify(const ExtendedValuation& v0, const Integer& p) {
    require_prime(p);
    if (!v0.finite()) return {DynamicsClass::EventuallyZero, std::nullopt};
    if (v0.is_integer()) {
        Rational value = v0.value();
        if (value >= 0 && value < Rational(p)) return {DynamicsClass::EventuallyZero, std::nullopt};
    }
    if (valuation_order(v0, p) < 0) return {DynamicsClass::DivergesToMinusInfinity, std::nullopt};
    return {DynamicsClass::EventuallyPeriodic, kappa_profile(v0, p).period};
}

CycleDetection detect_cycle(const ExtendedValuation& v0, const Integer& p, std::size_t max_steps,
                            const Integer& offset) {
    require_prime(p);
    auto f = [&](const ExtendedValuation& v) { return inc_step(v, p, offset); };
    CycleDetection result;

    auto first_infinity = [&] {
        ExtendedValuation v = v0;
        std::size_t i = 0;
        while (v.finite()) {
            v = f(v);
            ++i;
        }
        result.outcome = CycleDetection::Outcome::ReachesInfinity;
        result.preperiod = i;
        result.length = 1;
        return result;
    };

    if (!v0.finite()) return first_infinity();
    ExtendedValuation tortoise = f(v0);
    ExtendedValuation hare = f(tortoise);
    std::size_t steps = 1;
    while (tortoise != hare) {
        if (!hare.finite()) return first_infinity();
        if (++steps > max_steps) return result;
        tortoise = f(tortoise);
        hare = f(f(hare));
    }
    if (!hare.finite()) return first_infinity();

    std::size_t mu = 0;
    tortoise = v0;
    while (tortoise != hare) {
        tortoise = f(tortoise);
        hare = f(hare);
        ++mu;
    }
    std::size_t lambda = 1;
    hare = f(tortoise);
    while (tortoise != hare) {
        hare = f(hare);
        ++lambda;
    }
    result.outcome = CycleDetection::Outcome::Cycle;
    result.preperiod = mu;
    result.length = lambda;
    return result;
}

bool prediction_matches_iteration(const ExtendedValuation& v0, const Integer& p, std::size_t steps) {
    auto predicted = predicted_inc_sequence(kappa_profile(v0, p), p).take(steps);
    auto observed = increments(nu_sequence(v0, p, steps));
    return predicted == observed;
}

}  // namespace arithderiv
