#include "qcp/online_strategies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <omp.h>

namespace qcp {

namespace {

double quadratic_form(const Mat2& m, const Vec2& v) {
    return v[0] * (m[0][0] * v[0] + m[0][1] * v[1]) + v[1] * (m[1][0] * v[0] + m[1][1] * v[1]);
}

void require_change_point(int n, int true_k, const char* who) {
    if (n < 1) throw InvalidArgument(std::string(who) + ": n must be >= 1");
    if (true_k < 1 || true_k > n) {
        throw InvalidArgument(std::string(who) + ": true_k must lie in [1, n], got " + std::to_string(true_k));
    }
}

// Likelihood of `outcome` for a particle in state |φ> (hypotheses k <= s) and
// |0> (hypotheses k > s). Clamped into [0, 1] against rounding.
std::pair<double, double> likelihoods(const TwoOutcomeMeasurement& m, Outcome outcome, const QubitPair& states) {
    const double phi_hits = std::clamp(m.prob_phi(states.phi), 0.0, 1.0);
    const double zero_hits = std::clamp(m.prob_phi(states.zero), 0.0, 1.0);
    if (outcome == Outcome::phi) return {phi_hits, zero_hits};
    return {1.0 - phi_hits, 1.0 - zero_hits};
}

int argmax_first(const std::vector<double>& eta) {
    return static_cast<int>(std::max_element(eta.begin(), eta.end()) - eta.begin()) + 1;
}

}  // namespace

Mat2 TwoOutcomeMeasurement::projector_zero() const {
    return {{{1.0 - projector_phi[0][0], -projector_phi[0][1]}, {-projector_phi[1][0], 1.0 - projector_phi[1][1]}}};
}

double TwoOutcomeMeasurement::prob_phi(const Vec2& v) const { return quadratic_form(projector_phi, v); }

PosteriorDistribution PosteriorDistribution::uniform(int n) {
    if (n < 1) throw InvalidArgument("posterior needs n >= 1");
    return {std::vector<double>(static_cast<std::size_t>(n), 1.0 / n), 1};
}

GreedyPriors greedy_priors(const PosteriorDistribution& posterior, int s) {
    const int n = posterior.size();
    if (s < 1 || s > n) throw InvalidArgument("greedy_priors: step must lie in [1, n]");
    GreedyPriors out;
    for (int k = 1; k <= s; ++k) {
        if (out.rphi == 0 || posterior(k) > out.pphi) {
            out.pphi = posterior(k);
            out.rphi = k;
        }
    }
    for (int k = s + 1; k <= n; ++k) {
        if (out.r0 == 0 || posterior(k) > out.p0) {
            out.p0 = posterior(k);
            out.r0 = k;
        }
    }
    return out;
}

HelstromResult helstrom_measurement(double p0, double pphi, Overlap c) {
    if (!(p0 >= 0.0) || !(pphi >= 0.0) || !std::isfinite(p0) || !std::isfinite(pphi)) {
        throw InvalidArgument("helstrom_measurement: priors must be finite and non-negative");
    }
    if (p0 == 0.0 && pphi == 0.0) throw InvalidArgument("helstrom_measurement: both priors are zero");

    const QubitPair states(c);
    HelstromResult out;
    if (p0 == 0.0) {
        out.measurement.projector_phi = {{{1.0, 0.0}, {0.0, 1.0}}};
        out.step_success = pphi;
        return out;
    }
    if (pphi == 0.0) {
        out.measurement.projector_phi = {{{0.0, 0.0}, {0.0, 0.0}}};
        out.step_success = p0;
        return out;
    }

    // Γ = pphi |φ><φ| - p0 |0><0|; det Γ = -p0 pphi (1 - c^2) < 0, so exactly
    // one eigenvalue is positive.
    const double a = pphi * states.phi[0] * states.phi[0] - p0;
    const double b = pphi * states.phi[0] * states.phi[1];
    const double d = pphi * states.phi[1] * states.phi[1];
    const double radius = std::hypot(0.5 * (a - d), b);
    const double lambda_plus = 0.5 * (a + d) + radius;
    const double lambda_minus = 0.5 * (a + d) - radius;

    Mat2& proj = out.measurement.projector_phi;
    if (b == 0.0) {
        proj = {{{a > 0.0 ? 1.0 : 0.0, 0.0}, {0.0, d > 0.0 ? 1.0 : 0.0}}};
    } else {
        // Of the two equivalent eigenvector forms pick the better conditioned one.
        Vec2 v = (std::abs(lambda_plus - a) >= std::abs(lambda_plus - d)) ? Vec2{b, lambda_plus - a}
                                                                          : Vec2{lambda_plus - d, b};
        const double norm_sq = v[0] * v[0] + v[1] * v[1];
        proj = {{{v[0] * v[0] / norm_sq, v[0] * v[1] / norm_sq}, {v[0] * v[1] / norm_sq, v[1] * v[1] / norm_sq}}};
    }
    out.step_success = 0.5 * (pphi + p0 + std::abs(lambda_plus) + std::abs(lambda_minus));
    return out;
}

PosteriorDistribution bayes_update(const PosteriorDistribution& posterior, int s,
                                   const TwoOutcomeMeasurement& measurement, Outcome outcome, Overlap c) {
    const int n = posterior.size();
    if (s < 1 || s > n) throw InvalidArgument("bayes_update: step must lie in [1, n]");
    const auto [like_phi, like_zero] = likelihoods(measurement, outcome, QubitPair(c));

    PosteriorDistribution next{std::vector<double>(static_cast<std::size_t>(n)), s + 1};
    double total = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double w = (k <= s ? like_phi : like_zero) * posterior(k);
        next.eta[static_cast<std::size_t>(k - 1)] = w;
        total += w;
    }
    if (!(total > 0.0)) {
        throw ImpossibleOutcome("bayes_update: outcome has zero predicted probability at step " + std::to_string(s));
    }
    for (double& x : next.eta) x /= total;
    return next;
}

double basic_local_closed_form(int n, Overlap c) {
    if (n < 1) throw InvalidArgument("basic_local_closed_form: n must be >= 1");
    return 1.0 - c.c2() + c.c2() / n;
}

TrialRecord simulate_basic_local(int n, Overlap c, int true_k, CounterRng& rng) {
    require_change_point(n, true_k, "simulate_basic_local");
    const double p_one = 1.0 - c.c2();
    TrialRecord rec{true_k, 0, std::string(static_cast<std::size_t>(n), '0'), false, rng.seed()};
    for (int s = 1; s <= n; ++s) {
        const double u = rng.uniform();
        if (s >= true_k && u < p_one) {
            rec.outcomes[static_cast<std::size_t>(s - 1)] = '1';
            if (rec.guess == 0) rec.guess = s;
        }
    }
    if (rec.guess == 0) rec.guess = n;
    rec.success = rec.guess == true_k;
    return rec;
}

TrialRecord simulate_greedy_trial(int n, Overlap c, int true_k, CounterRng& rng) {
    require_change_point(n, true_k, "simulate_greedy_trial");
    const QubitPair states(c);
    TrialRecord rec{true_k, 0, std::string(static_cast<std::size_t>(n), '0'), false, rng.seed()};
    PosteriorDistribution posterior = PosteriorDistribution::uniform(n);
    for (int s = 1; s <= n; ++s) {
        const GreedyPriors priors = greedy_priors(posterior, s);
        const HelstromResult helstrom = helstrom_measurement(priors.p0, priors.pphi, c);
        const Vec2& actual = s < true_k ? states.zero : states.phi;
        const Outcome outcome = rng.uniform() < helstrom.measurement.prob_phi(actual) ? Outcome::phi : Outcome::zero;
        if (outcome == Outcome::phi) rec.outcomes[static_cast<std::size_t>(s - 1)] = '1';
        posterior = bayes_update(posterior, s, helstrom.measurement, outcome, c);
    }
    rec.guess = argmax_first(posterior.eta);
    rec.success = rec.guess == true_k;
    return rec;
}

namespace {

// joint[k-1] = P(outcomes so far | k); the leaf adds P(path | guess) / n.
double enumerate(int n, Overlap c, const QubitPair& states, const PosteriorDistribution& posterior,
                 const std::vector<double>& joint) {
    const int s = posterior.step;
    if (s > n) {
        return joint[static_cast<std::size_t>(argmax_first(posterior.eta) - 1)] / n;
    }
    const GreedyPriors priors = greedy_priors(posterior, s);
    const HelstromResult helstrom = helstrom_measurement(priors.p0, priors.pphi, c);

    double total = 0.0;
    for (Outcome outcome : {Outcome::zero, Outcome::phi}) {
        const auto [like_phi, like_zero] = likelihoods(helstrom.measurement, outcome, states);
        double predicted = 0.0;
        std::vector<double> next_joint(joint.size());
        for (int k = 1; k <= n; ++k) {
            const double like = k <= s ? like_phi : like_zero;
            predicted += like * posterior(k);
            next_joint[static_cast<std::size_t>(k - 1)] = like * joint[static_cast<std::size_t>(k - 1)];
        }
        if (!(predicted > 0.0)) continue;
        total += enumerate(n, c, states, bayes_update(posterior, s, helstrom.measurement, outcome, c), next_joint);
    }
    return total;
}

}  // namespace

double exact_greedy_enumeration(int n, Overlap c) {
    if (n < 1) throw InvalidArgument("exact_greedy_enumeration: n must be >= 1");
    if (n > 12) {
        throw ResourceLimit("exact_greedy_enumeration: n = " + std::to_string(n) + " exceeds the limit of 12");
    }
    return enumerate(n, c, QubitPair(c), PosteriorDistribution::uniform(n),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0));
}

const char* to_string(Strategy strategy) { return strategy == Strategy::basic ? "basic" : "greedy"; }

Strategy parse_strategy(const std::string& name) {
    if (name == "basic") return Strategy::basic;
    if (name == "greedy") return Strategy::greedy;
    throw InvalidArgument("unknown strategy '" + name + "' (expected basic or greedy)");
}

TrialRecord run_trial(Strategy strategy, int n, Overlap c, std::uint64_t base_seed, std::int64_t index) {
    CounterRng rng(trial_seed(base_seed, static_cast<std::uint64_t>(index)));
    const int true_k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    return strategy == Strategy::basic ? simulate_basic_local(n, c, true_k, rng)
                                       : simulate_greedy_trial(n, c, true_k, rng);
}

namespace {

MonteCarloResult summarize(std::int64_t successes, std::int64_t trials, std::uint64_t base_seed) {
    MonteCarloResult out;
    out.trials = trials;
    out.successes = successes;
    out.base_seed = base_seed;
    out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
    return out;
}

void require_trials(int n, std::int64_t trials) {
    if (n < 1) throw InvalidArgument("monte_carlo: n must be >= 1");
    if (trials < 1) throw InvalidArgument("monte_carlo: trials must be >= 1");
}

}  // namespace

MonteCarloResult monte_carlo(Strategy strategy, int n, Overlap c, std::int64_t trials, std::uint64_t base_seed,
                             const MonteCarloOptions& options) {
    require_trials(n, trials);
    std::vector<TrialRecord> records;
    if (options.keep_records) records.resize(static_cast<std::size_t>(trials));

    const int threads = options.threads;
    std::int64_t successes = 0;
    bool failed = false;
    std::string failure;
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads()) reduction(+ : successes)
    {
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < trials; ++t) {
            try {
                TrialRecord rec = run_trial(strategy, n, c, base_seed, t);
                successes += rec.success ? 1 : 0;
                if (options.keep_records) records[static_cast<std::size_t>(t)] = std::move(rec);
            } catch (const std::exception& e) {
#pragma omp critical(qcp_monte_carlo_failure)
                {
                    failed = true;
                    failure = e.what();
                }
            }
        }
    }
    if (failed) throw std::runtime_error("monte_carlo: " + failure);

    MonteCarloResult out = summarize(successes, trials, base_seed);
    out.records = std::move(records);
    return out;
}

namespace serial {

MonteCarloResult monte_carlo(Strategy strategy, int n, Overlap c, std::int64_t trials, std::uint64_t base_seed,
                             bool keep_records) {
    require_trials(n, trials);
    std::vector<TrialRecord> records;
    std::int64_t successes = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        TrialRecord rec = run_trial(strategy, n, c, base_seed, t);
        successes += rec.success ? 1 : 0;
        if (keep_records) records.push_back(std::move(rec));
    }
    MonteCarloResult out = summarize(successes, trials, base_seed);
    out.records = std::move(records);
    return out;
}

}  // namespace serial

}  // namespace qcp
