#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcp/gram_spectrum.hpp"

namespace qcp {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition jacobi_eigensolve(const Matrix& symmetric) {
    const Eigen::Index n = symmetric.rows();
    if (n != symmetric.cols()) throw InvalidArgument("jacobi_eigensolve: matrix is not square");
    const double scale = std::max(1.0, symmetric.cwiseAbs().maxCoeff());
    if ((symmetric - symmetric.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidArgument("jacobi_eigensolve: matrix is not symmetric");
    }

    Matrix a = 0.5 * (symmetric + symmetric.transpose());
    Matrix v = Matrix::Identity(n, n);
    constexpr double kTolerance = 1e-12;
    constexpr int kMaxSweeps = 100;

    int sweep = 0;
    for (; off_diagonal_norm(a) >= kTolerance; ++sweep) {
        if (sweep == kMaxSweeps) {
            throw SpectralFailure("jacobi_eigensolve: no convergence after 100 sweeps");
        }
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double cs = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * cs;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (Eigen::Index r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = cs * arp - sn * arq;
                    a(p, r) = a(r, p);
                    a(r, q) = sn * arp + cs * arq;
                    a(q, r) = a(r, q);
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = cs * vrp - sn * vrq;
                    v(r, q) = sn * vrp + cs * vrq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    EigenDecomposition out{Vector(n), Matrix(n, n), sweep};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

}  // namespace qcp
