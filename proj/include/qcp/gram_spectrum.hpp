#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qcp/overlap.hpp"

namespace qcp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Whether the all-default sequence |0...0> (no change at all) is a hypothesis.
/// Appending it keeps the Toeplitz form: the Gram matrix just grows to n + 1.
enum class ChangeHypotheses { change_only, with_no_change };

/// Gram matrix of the source states, G_ij = c^|i-j|.
struct GramMatrix {
    int n = 0;  ///< number of hypotheses (matrix size)
    Overlap c{0.0};
    Matrix entries;
};

GramMatrix build_gram(int n, Overlap c, ChangeHypotheses hypotheses = ChangeHypotheses::change_only);

/// Closed-form inverse (1+c^2)/(1-c^2) I - c/(1-c^2) H, where H is the
/// tridiagonal adjacency matrix with c added at both ends of the diagonal.
Matrix gram_inverse(int n, Overlap c);

/// Eigendecomposition of G from the zeros of P_n(cos θ).
///
/// thetas are ascending; lambdas[l] and column l of eigvecs belong to thetas[l].
/// Each eigenvector is w_j = [sin(jθ) - c sin((j-1)θ)] / sin θ, scaled to unit
/// Euclidean norm (so its first component is positive). At c = 0 the
/// eigenvectors are the standard basis.
struct GramSpectrum {
    int n = 0;
    Overlap c{0.0};
    std::vector<double> thetas;
    std::vector<double> lambdas;
    Matrix eigvecs;

    [[nodiscard]] double lambda_max() const;
    [[nodiscard]] double lambda_min() const;
};

/// Throws SpectralFailure when the sign-change scan cannot isolate n zeros.
GramSpectrum solve_spectrum(int n, Overlap c);

struct SqrtGram {
    Matrix matrix;
    Vector diag;
    double trace = 0.0;
};

/// √G = Σ_l √λ_l v^l (v^l)^T.
SqrtGram sqrt_gram(const GramSpectrum& spectrum);

/// Eigenvalues λ(θ) = (1 - c^2) / (1 - 2c cos θ + c^2).
double eigenvalue_from_angle(double theta, Overlap c);

/// Closed form of ||w||^2 for the unnormalized eigenvector at a zero θ of P_n.
double eigenvector_norm_sq(int n, Overlap c, double theta);

/// Dense symmetric eigensolver: cyclic Jacobi rotations until the
/// off-diagonal Frobenius norm drops below 1e-12. Eigenpairs ascending.
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
    int sweeps = 0;
};

EigenDecomposition jacobi_eigensolve(const Matrix& symmetric);

/// lim tr√G / n = (2 √(1-c^2) / π) K(c^2).
double trace_limit(Overlap c);

/// Leading-order deviation (√G)_kk - γ ≈ c^{2k} / (4 (1-c^2) √(2π k^3)).
double diag_deviation_asymptotic(int k, Overlap c);

enum class IntegralMode { exact, asymptotic };

/// I_r = ∫_0^π cos(rθ) / (1 - 2c cos θ + c^2)^{3/2} dθ.
/// exact: adaptive Gauss-Kronrod; asymptotic: 2 c^r √(π r) / (1-c^2)^{3/2}.
/// The exact mode is accurate to about 1e-14 (1-c)^{-3} in absolute terms, so
/// once I_r falls below that level (r around 45 at c = 0.5) only the
/// asymptotic mode carries relative accuracy.
double integral_i_r(int r, Overlap c, IntegralMode mode);

namespace serial {

GramSpectrum solve_spectrum(int n, Overlap c);
SqrtGram sqrt_gram(const GramSpectrum& spectrum);

}  // namespace serial

}  // namespace qcp
