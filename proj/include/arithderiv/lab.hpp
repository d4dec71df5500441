#pragma once

// Finite-sample experiments on p-adic continuity and strict differentiability
// of the arithmetic (sub)derivatives, reported as rows of valuations.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithderiv/core.hpp"
#include "arithderiv/qderiv.hpp"
#include "arithderiv/quadfield.hpp"

namespace arithderiv {

// A derivative-like self map of Q.
class RationalMap {
public:
    enum class Kind { Identity, Full, Partial, Sub };

    static RationalMap identity();
    static RationalMap full();
    static RationalMap partial(Integer p);
    static RationalMap sub(PrimeSet T);

    Kind kind() const noexcept { return kind_; }
    // The prime of a partial map, the smallest prime of a sub map.
    const Integer& prime() const;
    const std::optional<PrimeSet>& primes() const noexcept { return T_; }

    Rational operator()(const Rational& x) const;
    std::string name() const;

private:
    RationalMap(Kind kind, Integer p, std::optional<PrimeSet> T)
        : kind_(kind), p_(std::move(p)), T_(std::move(T)) {}
    Kind kind_;
    Integer p_;
    std::optional<PrimeSet> T_;
};

// (f(u) - f(v)) / (u - v); DomainError when u = v.
Rational phi(const RationalMap& f, const Rational& u, const Rational& v);
// (phi(u, w) - phi(v, w)) / (u - v); DomainError unless pairwise distinct.
Rational phi2(const RationalMap& f, const Rational& u, const Rational& v, const Rational& w);

struct ProbeRow {
    long i = 0;
    ExtendedValuation in_val;   // nu(x - x_i)
    ExtendedValuation out_val;  // nu(f(x) - f(x_i)), or nu(Phi_i) for quotient probes
    std::optional<Rational> aux;
};

enum class Verdict { Converges, Bounded, Oscillates, Undecided };
std::string to_string(Verdict verdict);

struct ProbeReport {
    std::string experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    std::vector<ProbeRow> rows;
    Verdict verdict = Verdict::Undecided;
};

// Raised when the prime search of discontinuity_witness exhausts its budget;
// carries the rows built so far.
class SearchError : public Error {
public:
    SearchError(const std::string& what, ProbeReport partial)
        : Error("search", what), partial_(std::move(partial)) {}
    const ProbeReport& partial() const noexcept { return partial_; }

private:
    ProbeReport partial_;
};

enum class GeneratorKind { UnitPerturbation, PowerSequence, Custom };

struct Generator {
    GeneratorKind kind = GeneratorKind::UnitPerturbation;
    // PowerSequence: x_i = x + base^i (defaults to p when unset).
    std::optional<Integer> base;
    // Custom: x_1, x_2, ...
    std::vector<Rational> points;
};

// Rows i = 1..N with the nu_p distances. Verdict rules:
//   converges when, with C = max(in - out) over the first half of the rows,
//   every later row has out >= in - C (C is reported in params);
//   undecided otherwise.
// Throws GeneratorError when the inputs do not approach x.
ProbeReport continuity_probe(const RationalMap& f, const Rational& x, const Generator& gen, long N,
                             const Integer& p);

// Same for D_K or D_{K,T} at a prime ideal P with x_i = x (1 + p^i).
ProbeReport continuity_probe(const QuadraticElement& x, const std::vector<PrimeIdealRef>& T,
                             const PrimeIdealRef& P, long N);

// x_i = q0^(p^M) x / q_i with q_i = q0^(p^M) + n_i p^i prime. Verdict bounded
// when every output is finite and the second half never exceeds the maximum of
// the first half.
ProbeReport discontinuity_witness(const PrimeSet& T, const Integer& p, const Rational& x, long N);

// Perturbations x_i x with x_i in O_K, nu_focus(1 - x_i) = i, nu = 1 at the
// first other ideal of T and nu = 0 at the rest, built by CRT.
ProbeReport special_witness(const QuadraticField& K, const std::vector<PrimeIdealRef>& T,
                            const PrimeIdealRef& focus, const QuadraticElement& x, long N);

// Difference quotients Phi_i. For x != 0 the pairs are x(1 +- p^i), the
// reported limit is f(x)/x and Phi2 on (x(1+p^i), x(1-p^i), x(1+p^(i+1))) goes
// into params. For x = 0 the pairs are (b^(i+1), b^i) with b = p when f sees p
// and b = p q otherwise (q the smallest prime of f). Verdicts: converges when
// Phi is constant on the second half; oscillates when at least two values of
// nu_p(Phi) each occur twice or more on the second half.
ProbeReport strict_diff_probe(const RationalMap& f, const Rational& x, long N, const Integer& p);

nlohmann::ordered_json to_json(const ProbeReport& report);
// Header i,in_val,out_val,aux; RFC 4180 quoting.
std::string to_csv(const ProbeReport& report);

}  // namespace arithderiv
