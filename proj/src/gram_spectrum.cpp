#include "qcp/gram_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcp/special_functions.hpp"

namespace qcp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(int n, const char* who) {
    if (n < 1) {
        throw InvalidArgument(std::string(who) + ": n must be >= 1, got " + std::to_string(n));
    }
}

struct Bracket {
    double lo;
    double hi;
};

// Scans P_n(cos θ) on a uniform grid over [0, π] and returns one bracket per
// sign change. P_n(±1) never vanishes for c < 1, so the endpoints are safe.
std::vector<Bracket> scan_brackets(int n, Overlap c, int cells, bool parallel) {
    std::vector<double> values(static_cast<std::size_t>(cells) + 1);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j <= cells; ++j) {
        const double theta = kPi * j / cells;
        values[j] = special::boundary_polynomial(n, c, std::cos(theta));
    }

    std::vector<Bracket> brackets;
    brackets.reserve(static_cast<std::size_t>(n));
    int last = 0;
    bool after_exact_zero = false;
    for (int j = 1; j <= cells; ++j) {
        const double theta = kPi * j / cells;
        if (values[j] == 0.0) {
            brackets.push_back({theta, theta});
            after_exact_zero = true;
            continue;
        }
        if (!after_exact_zero && std::signbit(values[j]) != std::signbit(values[last])) {
            brackets.push_back({kPi * last / cells, theta});
        }
        after_exact_zero = false;
        last = j;
    }
    return brackets;
}

double bisect_root(int n, Overlap c, Bracket b) {
    double lo = b.lo;
    double hi = b.hi;
    if (lo == hi) return lo;
    const bool lo_negative = std::signbit(special::boundary_polynomial(n, c, std::cos(lo)));
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double value = special::boundary_polynomial(n, c, std::cos(mid));
        if (value == 0.0) return mid;
        if (std::signbit(value) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

GramSpectrum solve_spectrum_impl(int n, Overlap c, bool parallel) {
    require_size(n, "solve_spectrum");
    GramSpectrum spec{n, c, {}, {}, Matrix(n, n)};
    spec.thetas.resize(static_cast<std::size_t>(n));
    spec.lambdas.resize(static_cast<std::size_t>(n));

    if (c.c() == 0.0) {
        // G = I: keep the zeros of U_n as angles but use the standard basis,
        // so that √G comes out exactly I.
        for (int l = 0; l < n; ++l) {
            spec.thetas[l] = kPi * (l + 1) / (n + 1);
            spec.lambdas[l] = 1.0;
        }
        spec.eigvecs.setIdentity();
        return spec;
    } else {
        constexpr int kMaxRefinements = 12;
        int cells = 4 * n;
        std::vector<Bracket> brackets = scan_brackets(n, c, cells, parallel);
        for (int round = 0; static_cast<int>(brackets.size()) != n; ++round) {
            if (round == kMaxRefinements) {
                throw SpectralFailure("solve_spectrum: found " + std::to_string(brackets.size()) +
                                      " sign changes of P_n instead of " + std::to_string(n) +
                                      " (n=" + std::to_string(n) + ", c=" + std::to_string(c.c()) +
                                      ", grid=" + std::to_string(cells) + " cells)");
            }
            cells *= 2;
            brackets = scan_brackets(n, c, cells, parallel);
        }
#pragma omp parallel for schedule(static) if (parallel)
        for (int l = 0; l < n; ++l) spec.thetas[l] = bisect_root(n, c, brackets[l]);
    }

    const double cc = c.c();
#pragma omp parallel for schedule(static) if (parallel)
    for (int l = 0; l < n; ++l) {
        const double theta = spec.thetas[l];
        spec.lambdas[l] = eigenvalue_from_angle(theta, c);
        const double inv_sin = 1.0 / std::sin(theta);
        double norm_sq = 0.0;
        for (int j = 1; j <= n; ++j) {
            const double w = (std::sin(j * theta) - cc * std::sin((j - 1) * theta)) * inv_sin;
            spec.eigvecs(j - 1, l) = w;
            norm_sq += w * w;
        }
        spec.eigvecs.col(l) /= std::sqrt(norm_sq);
    }
    return spec;
}

}  // namespace

GramMatrix build_gram(int n, Overlap c, ChangeHypotheses hypotheses) {
    require_size(n, "build_gram");
    const int size = hypotheses == ChangeHypotheses::with_no_change ? n + 1 : n;
    GramMatrix g{size, c, Matrix(size, size)};
    for (int i = 0; i < size; ++i) {
        for (int j = 0; j < size; ++j) {
            g.entries(i, j) = std::pow(c.c(), std::abs(i - j));
        }
    }
    return g;
}

Matrix gram_inverse(int n, Overlap c) {
    require_size(n, "gram_inverse");
    const double cc = c.c();
    const double denom = 1.0 - cc * cc;
    Matrix h = Matrix::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        h(i, i + 1) = 1.0;
        h(i + 1, i) = 1.0;
    }
    h(0, 0) += cc;
    h(n - 1, n - 1) += cc;
    return (1.0 + cc * cc) / denom * Matrix::Identity(n, n) - cc / denom * h;
}

double GramSpectrum::lambda_max() const { return *std::max_element(lambdas.begin(), lambdas.end()); }

double GramSpectrum::lambda_min() const { return *std::min_element(lambdas.begin(), lambdas.end()); }

GramSpectrum solve_spectrum(int n, Overlap c) { return solve_spectrum_impl(n, c, true); }

SqrtGram sqrt_gram(const GramSpectrum& spectrum) {
    const int n = spectrum.n;
    Vector root_lambda(n);
    for (int l = 0; l < n; ++l) root_lambda(l) = std::sqrt(spectrum.lambdas[l]);

    const Matrix& v = spectrum.eigvecs;
    SqrtGram out{Matrix(n, n), Vector(n), 0.0};
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double sum = 0.0;
            for (int l = 0; l < n; ++l) sum += root_lambda(l) * v(i, l) * v(j, l);
            out.matrix(i, j) = sum;
            out.matrix(j, i) = sum;
        }
    }
    out.diag = out.matrix.diagonal();
    out.trace = out.diag.sum();
    return out;
}

double eigenvalue_from_angle(double theta, Overlap c) {
    const double cc = c.c();
    return (1.0 - cc * cc) / (1.0 - 2.0 * cc * std::cos(theta) + cc * cc);
}

double eigenvector_norm_sq(int n, Overlap c, double theta) {
    const double cc = c.c();
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);
    const double f_n = 0.5 * (1.0 - cc * cc) * (1.0 - std::cos(2.0 * n * theta)) -
                       std::sin(2.0 * n * theta) / (2.0 * sin_t) * ((1.0 + cc * cc) * cos_t - 2.0 * cc);
    return n / (2.0 * sin_t * sin_t) * (1.0 - 2.0 * cc * cos_t + cc * cc + f_n / n);
}

double trace_limit(Overlap c) {
    return 2.0 * std::sqrt(1.0 - c.c2()) / kPi * special::elliptic_k(c.c2());
}

double diag_deviation_asymptotic(int k, Overlap c) {
    if (k < 1) throw InvalidArgument("diag_deviation_asymptotic: k must be >= 1");
    const double kk = static_cast<double>(k);
    return std::pow(c.c2(), kk) / (4.0 * (1.0 - c.c2()) * std::sqrt(2.0 * kPi * kk * kk * kk));
}

namespace serial {

GramSpectrum solve_spectrum(int n, Overlap c) { return solve_spectrum_impl(n, c, false); }

SqrtGram sqrt_gram(const GramSpectrum& spectrum) {
    const int n = spectrum.n;
    Vector root_lambda(n);
    for (int l = 0; l < n; ++l) root_lambda(l) = std::sqrt(spectrum.lambdas[l]);
    SqrtGram out;
    out.matrix = spectrum.eigvecs * root_lambda.asDiagonal() * spectrum.eigvecs.transpose();
    out.diag = out.matrix.diagonal();
    out.trace = out.diag.sum();
    return out;
}

}  // namespace serial

}  // namespace qcp
