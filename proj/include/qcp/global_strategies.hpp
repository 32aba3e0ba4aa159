#pragma once

#include <vector>

#include "qcp/gram_spectrum.hpp"

namespace qcp {

/// Prior probabilities {p_k} over the n hypotheses.
class PriorDistribution {
public:
    /// Throws InvalidArgument for negative entries or a sum off 1 by more than 1e-12.
    explicit PriorDistribution(std::vector<double> p);

    static PriorDistribution uniform(int n);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(p_.size()); }
    [[nodiscard]] double operator[](int k) const { return p_[static_cast<std::size_t>(k)]; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return p_; }

private:
    std::vector<double> p_;
};

/// Gram matrix of the prior-weighted states √p_k |Ψ_k>, with the derived
/// quantities entering the success-probability bounds.
struct WeightedGram {
    Matrix w;
    Matrix sqrt_w;
    Vector q;  ///< diag(√W) / tr(√W)
    double trace_sqrt = 0.0;
    double lambda_max = 0.0;
    bool rank_deficient = false;  ///< some eigenvalue of W is below 1e-12 λ_max

    [[nodiscard]] int size() const noexcept { return static_cast<int>(w.rows()); }
};

WeightedGram weighted_gram(const GramMatrix& gram, const PriorDistribution& priors);

/// (tr √W)^2 / n.
double success_lower_bound(const WeightedGram& w);

/// (tr √W)^2 / n + √(n λ_max) ||q - u||_1.
double success_upper_bound(const WeightedGram& w);

/// Success probability of the square root measurement, Σ_k (√W)_kk^2.
double srm_success(const WeightedGram& w);

/// Large-n limit of the optimal success probability, 4(1-c^2)/π^2 K(c^2)^2.
/// Takes the raw overlap so that c >= 1 can return the limiting value 0.
double asymptotic_pmax(double c);

/// Column k holds the coordinates of |Ψ_k> in an orthonormal basis of the
/// span of the source states (the columns of √G).
Matrix embed_states(const GramMatrix& gram);

struct PovmSolverResult {
    double success_probability = 0.0;
    std::vector<Matrix> povm;
    int iterations = 0;
    double residual = 0.0;  ///< probability gain of the last iteration
    bool converged = false;
    std::vector<double> history;  ///< success probability after each iteration; history[0] is the SRM
};

/// Minimum-error POVM by the fixed-point iteration started at the square root
/// measurement: E_k <- A^{-1/2} p_k^2 e_k |Ψ_k><Ψ_k| A^{-1/2} with
/// e_k = <Ψ_k|E_k|Ψ_k> and A = Σ p_k^2 e_k |Ψ_k><Ψ_k|. Stops when an iteration
/// gains less than tol.
PovmSolverResult optimal_povm_fixed_point(const Matrix& states, const PriorDistribution& priors,
                                          double tol = 1e-10, int max_iter = 10000);

/// max_k || E_k^2 - E_k ||_max: zero when every element is an orthogonal projector.
double projector_defect(const PovmSolverResult& result);

}  // namespace qcp
