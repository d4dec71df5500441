#pragma once

// The dynamical system v -> v + nu_p(v) - 1 followed by the valuations of
// iterated partial derivatives, together with the kappa-chain predictor for its
// preperiod and period.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arithderiv/core.hpp"

namespace arithderiv {

// nu_p of a finite nonzero valuation c/e, i.e. nu_p(c) - nu_p(e).
long valuation_order(const ExtendedValuation& v, const Integer& p);

// v = b * p^k with nu_p(b) = 0.
struct ValuationDecomposition {
    Rational b;
    long k = 0;
};
ValuationDecomposition decompose(const ExtendedValuation& v, const Integer& p);

// +inf when v is 0 or +inf, otherwise v + nu_p(v) - 1 - offset. A positive
// offset models nu_p(g(p,K)) > 0; no period claims are made in that regime.
ExtendedValuation inc_step(const ExtendedValuation& v, const Integer& p, const Integer& offset = 0);

// v0 followed by `steps` iterates of inc_step, truncated after the first +inf.
std::vector<ExtendedValuation> nu_sequence(const ExtendedValuation& v0, const Integer& p,
                                           std::size_t steps, const Integer& offset = 0);

// Consecutive differences of a finite prefix of a nu sequence.
std::vector<Integer> increments(const std::vector<ExtendedValuation>& sequence);

struct Segment {
    Integer k;
    std::vector<Integer> entries;
};

// (k-1, then (k-1 mod p) copies of -1).
Segment segment(const Integer& k, const Integer& p);

struct KappaProfile {
    Integer kappa0;
    std::vector<Integer> kappas;  // kappa_1 .. kappa_N
    std::size_t N = 0;
    Integer period;
};

// kappa_0 = v0 mod p (as a p-adic residue), kappa_1 = nu_p(v0 - kappa_0) and
// kappa_i = nu_p(floor_p(kappa_{i-1} - 1)) until 1 <= kappa_N <= p.
// Throws ClassificationError when v0 is eventually +inf or nu_p(v0) < 0.
KappaProfile kappa_profile(const ExtendedValuation& v0, const Integer& p);

struct EventuallyPeriodicSeq {
    std::vector<Integer> preperiod;
    std::vector<Integer> cycle;

    const Integer& at(std::size_t i) const;
    std::vector<Integer> take(std::size_t n) const;
};

EventuallyPeriodicSeq predicted_inc_sequence(const KappaProfile& profile, const Integer& p);

enum class DynamicsClass { EventuallyZero, EventuallyPeriodic, DivergesToMinusInfinity };

struct Classification {
    DynamicsClass kind;
    std::optional<Integer> period;  // set for EventuallyPeriodic

    std::string name() const;
};

Classification classify(const ExtendedValuation& v0, const Integer& p);

// Direct-iteration oracle based on Floyd's tortoise and hare.
struct CycleDetection {
    enum class Outcome { ReachesInfinity, Cycle, Undecided };
    Outcome outcome = Outcome::Undecided;
    std::size_t preperiod = 0;  // mu; for ReachesInfinity, the index of the first +inf
    std::size_t length = 0;     // lambda
};

CycleDetection detect_cycle(const ExtendedValuation& v0, const Integer& p,
                            std::size_t max_steps = 10'000, const Integer& offset = 0);

// True when the predicted increments match the differences of the first
// `steps` + 1 terms of the nu sequence.
bool prediction_matches_iteration(const ExtendedValuation& v0, const Integer& p, std::size_t steps);

}  // namespace arithderiv
