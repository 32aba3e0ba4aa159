#include "qcp/global_strategies.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "qcp/special_functions.hpp"

namespace qcp {

PriorDistribution::PriorDistribution(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) throw InvalidArgument("prior distribution is empty");
    double sum = 0.0;
    for (double x : p_) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw InvalidArgument("prior probabilities must be finite and non-negative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw InvalidArgument("prior probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

PriorDistribution PriorDistribution::uniform(int n) {
    if (n < 1) throw InvalidArgument("uniform prior needs n >= 1");
    return PriorDistribution(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

WeightedGram weighted_gram(const GramMatrix& gram, const PriorDistribution& priors) {
    const int n = gram.n;
    if (priors.size() != n || gram.entries.rows() != n) {
        throw InvalidArgument("weighted_gram: prior has " + std::to_string(priors.size()) +
                              " entries for a Gram matrix of size " + std::to_string(n));
    }
    Vector root_p(n);
    for (int k = 0; k < n; ++k) root_p(k) = std::sqrt(priors[k]);

    WeightedGram out;
    out.w = root_p.asDiagonal() * gram.entries * root_p.asDiagonal();

    const EigenDecomposition eig = jacobi_eigensolve(out.w);
    out.lambda_max = eig.values.maxCoeff();
    out.rank_deficient = eig.values.minCoeff() < 1e-12 * out.lambda_max;
    const Vector root_values = eig.values.cwiseMax(0.0).cwiseSqrt();
    out.sqrt_w = eig.vectors * root_values.asDiagonal() * eig.vectors.transpose();
    out.trace_sqrt = out.sqrt_w.trace();
    out.q = out.sqrt_w.diagonal() / out.trace_sqrt;
    return out;
}

double success_lower_bound(const WeightedGram& w) {
    return w.trace_sqrt * w.trace_sqrt / w.size();
}

double success_upper_bound(const WeightedGram& w) {
    const int n = w.size();
    double l1 = 0.0;
    for (int k = 0; k < n; ++k) l1 += std::abs(w.q(k) - 1.0 / n);
    return success_lower_bound(w) + std::sqrt(n * w.lambda_max) * l1;
}

double srm_success(const WeightedGram& w) { return w.sqrt_w.diagonal().squaredNorm(); }

double asymptotic_pmax(double c) {
    if (c >= 1.0) return 0.0;
    const Overlap overlap(c);
    const double k = special::elliptic_k(overlap.c2());
    return 4.0 * (1.0 - overlap.c2()) / (std::numbers::pi * std::numbers::pi) * k * k;
}

Matrix embed_states(const GramMatrix& gram) {
    const GramSpectrum spectrum = solve_spectrum(gram.n, gram.c);
    if (spectrum.lambda_min() < 1e-12 * spectrum.lambda_max()) {
        throw DegenerateEnsemble("embed_states: Gram matrix is numerically singular");
    }
    return sqrt_gram(spectrum).matrix;
}

namespace {

struct RankOnePovm {
    std::vector<Vector> directions;  // E_k = m_k m_k^T
    Vector hit;                      // <Ψ_k|E_k|Ψ_k>
};

// E_k = a_k A^{-1/2} |Ψ_k><Ψ_k| A^{-1/2} with A = Σ_k a_k |Ψ_k><Ψ_k|.
RankOnePovm conjugate(const Matrix& states, const Vector& weights) {
    const Eigen::Index dim = states.rows();
    const Eigen::Index n = states.cols();
    const Matrix aggregate = states * weights.asDiagonal() * states.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(aggregate);
    if (eig.info() != Eigen::Success) {
        throw SpectralFailure("optimal_povm_fixed_point: eigensolver failed on the aggregate operator");
    }
    const double cutoff = 1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff();
    Vector inv_root(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double value = eig.eigenvalues()(i);
        inv_root(i) = value > cutoff ? 1.0 / std::sqrt(value) : 0.0;
    }
    const Matrix inv_sqrt = eig.eigenvectors() * inv_root.asDiagonal() * eig.eigenvectors().transpose();

    RankOnePovm out{std::vector<Vector>(static_cast<std::size_t>(n)), Vector(n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.directions[k] = std::sqrt(weights(k)) * (inv_sqrt * states.col(k));
        const double overlap = states.col(k).dot(out.directions[k]);
        out.hit(k) = overlap * overlap;
    }
    return out;
}

double success_of(const RankOnePovm& povm, const PriorDistribution& priors) {
    double sum = 0.0;
    for (int k = 0; k < priors.size(); ++k) sum += priors[k] * povm.hit(k);
    return sum;
}

}  // namespace

PovmSolverResult optimal_povm_fixed_point(const Matrix& states, const PriorDistribution& priors,
                                          double tol, int max_iter) {
    const Eigen::Index n = states.cols();
    if (priors.size() != n) throw InvalidArgument("optimal_povm_fixed_point: prior size mismatch");
    if (!(tol > 0.0)) throw InvalidArgument("optimal_povm_fixed_point: tol must be > 0");
    if (max_iter < 1) throw InvalidArgument("optimal_povm_fixed_point: max_iter must be >= 1");

    Vector p(n);
    for (Eigen::Index k = 0; k < n; ++k) p(k) = priors[static_cast<int>(k)];
    const Vector p2 = p.cwiseProduct(p);

    PovmSolverResult result;
    RankOnePovm current = conjugate(states, p);  // square root measurement
    double success = success_of(current, priors);
    result.history.push_back(success);

    for (int it = 1; it <= max_iter; ++it) {
        RankOnePovm next = conjugate(states, p2.cwiseProduct(current.hit));
        const double next_success = success_of(next, priors);
        const double gain = next_success - success;
        result.history.push_back(next_success);
        result.iterations = it;
        result.residual = gain;
        if (gain >= 0.0) {
            current = std::move(next);
            success = next_success;
        }
        if (gain < tol) {
            result.converged = true;
            break;
        }
    }

    result.success_probability = success;
    result.povm.reserve(static_cast<std::size_t>(n));
    for (const Vector& m : current.directions) result.povm.push_back(m * m.transpose());
    return result;
}

double projector_defect(const PovmSolverResult& result) {
    double worst = 0.0;
    for (const Matrix& e : result.povm) {
        worst = std::max(worst, (e * e - e).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace qcp
