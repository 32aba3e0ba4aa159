#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qcp/counter_rng.hpp"
#include "qcp/overlap.hpp"

namespace qcp {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Default state |0> = (1, 0) and mutated state |φ> = (c, √(1-c^2)).
struct QubitPair {
    explicit QubitPair(Overlap overlap) : c(overlap), zero{1.0, 0.0}, phi{overlap.c(), overlap.s()} {}
    Overlap c;
    Vec2 zero;
    Vec2 phi;
};

/// Two-outcome projective measurement {Π(φ), Π(0) = I - Π(φ)} on one qubit.
struct TwoOutcomeMeasurement {
    Mat2 projector_phi{};

    [[nodiscard]] Mat2 projector_zero() const;
    /// <v|Π(φ)|v>.
    [[nodiscard]] double prob_phi(const Vec2& v) const;
};

enum class Outcome : std::uint8_t { zero = 0, phi = 1 };

/// η^{(s)}: posterior over change points k = 1..n before measuring particle s.
struct PosteriorDistribution {
    std::vector<double> eta;  ///< eta[k - 1] = p(k | r_1 .. r_{s-1})
    int step = 1;

    static PosteriorDistribution uniform(int n);
    [[nodiscard]] int size() const noexcept { return static_cast<int>(eta.size()); }
    [[nodiscard]] double operator()(int k) const { return eta[static_cast<std::size_t>(k - 1)]; }
};

/// Weights of the two hypotheses "particle s is |φ>" (k <= s) and "particle s
/// is |0>" (k > s), each the largest posterior in its range. Indices are
/// 1-based change points, ties go to the smallest index; r0 = 0 when s = n.
struct GreedyPriors {
    double p0 = 0.0;
    double pphi = 0.0;
    int r0 = 0;
    int rphi = 0;
};

GreedyPriors greedy_priors(const PosteriorDistribution& posterior, int s);

struct HelstromResult {
    TwoOutcomeMeasurement measurement;
    double step_success = 0.0;  ///< ½ (pphi + p0 + tr|Γ|)
};

/// Optimal two-state measurement for Γ = pphi |φ><φ| - p0 |0><0|: Π(φ) projects
/// onto the positive eigenspace. A semidefinite Γ sends the whole qubit to the
/// dominant outcome.
HelstromResult helstrom_measurement(double p0, double pphi, Overlap c);

/// Bayes rule with likelihood <φ|Π_r|φ> for k <= s and <0|Π_r|0> for k > s.
/// Throws ImpossibleOutcome if the outcome has zero predicted probability.
PosteriorDistribution bayes_update(const PosteriorDistribution& posterior, int s,
                                   const TwoOutcomeMeasurement& measurement, Outcome outcome, Overlap c);

/// One simulated sequence. outcomes[s-1] is '1' for the φ outcome (basis
/// outcome 1 for the basic strategy), '0' otherwise.
struct TrialRecord {
    int true_k = 0;
    int guess = 0;
    std::string outcomes;
    bool success = false;
    std::uint64_t seed = 0;
};

/// 1 - c^2 + c^2 / n.
double basic_local_closed_form(int n, Overlap c);

/// Computational-basis measurement of every particle; guess the first
/// position that reads 1, or n if none does.
TrialRecord simulate_basic_local(int n, Overlap c, int true_k, CounterRng& rng);

/// Greedy Bayesian strategy: per-step Helstrom measurement from greedy_priors,
/// Born-rule outcome under the true state, Bayes update, final argmax.
TrialRecord simulate_greedy_trial(int n, Overlap c, int true_k, CounterRng& rng);

/// Exact success probability of the greedy strategy by walking every outcome
/// sequence. Throws ResourceLimit for n > 12.
double exact_greedy_enumeration(int n, Overlap c);

enum class Strategy { basic, greedy };

const char* to_string(Strategy strategy);
Strategy parse_strategy(const std::string& name);

struct MonteCarloOptions {
    int threads = 0;            ///< 0 keeps the OpenMP default
    bool keep_records = false;  ///< fill MonteCarloResult::records
};

struct MonteCarloResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    std::uint64_t base_seed = 0;
    std::vector<TrialRecord> records;  ///< in trial order, when requested
};

/// Success-rate estimate over `trials` trials with true_k uniform on 1..n.
/// Trial t uses CounterRng(trial_seed(base_seed, t)); its first draw picks
/// true_k. The result does not depend on thread count or schedule.
MonteCarloResult monte_carlo(Strategy strategy, int n, Overlap c, std::int64_t trials, std::uint64_t base_seed,
                             const MonteCarloOptions& options = {});

/// Runs trial `index` of a Monte Carlo batch.
TrialRecord run_trial(Strategy strategy, int n, Overlap c, std::uint64_t base_seed, std::int64_t index);

namespace serial {

MonteCarloResult monte_carlo(Strategy strategy, int n, Overlap c, std::int64_t trials, std::uint64_t base_seed,
                             bool keep_records = false);

}  // namespace serial

}  // namespace qcp
