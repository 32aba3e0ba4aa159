#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qcp/gram_spectrum.hpp"

namespace qcp {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

template <class F>
Estimate gauss_kronrod(const F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double sum = f(centre - dx) + f(centre + dx);
        kronrod += kKronrodWeights[i] * sum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

// Error budget proportional to interval length: tol_density * (b - a).
template <class F>
double adaptive(const F& f, double a, double b, double tol_density, int depth) {
    const Estimate whole = gauss_kronrod(f, a, b);
    if (whole.error <= tol_density * (b - a) || depth == 0) return whole.value;
    const double mid = 0.5 * (a + b);
    return adaptive(f, a, mid, tol_density, depth - 1) + adaptive(f, mid, b, tol_density, depth - 1);
}

}  // namespace

double integral_i_r(int r, Overlap c, IntegralMode mode) {
    if (r < 1) throw InvalidArgument("integral_i_r: r must be >= 1");
    const double cc = c.c();
    const double one_minus_c2 = 1.0 - cc * cc;

    if (mode == IntegralMode::asymptotic) {
        return 2.0 * std::pow(cc, r) * std::sqrt(std::numbers::pi * r) / std::pow(one_minus_c2, 1.5);
    }

    const auto integrand = [&](double theta) {
        return std::cos(r * theta) / std::pow(1.0 - 2.0 * cc * std::cos(theta) + cc * cc, 1.5);
    };
    // One panel per half period of cos(rθ), refined adaptively. The tolerance
    // is tied to the peak of the envelope, (1 - c)^{-3}.
    const int panels = std::max(8, 2 * r);
    const double width = std::numbers::pi / panels;
    const double peak = 1.0 / std::pow(1.0 - cc, 3.0);
    const double tol_density = 1e-14 * peak;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        total += adaptive(integrand, p * width, (p + 1) * width, tol_density, 20);
    }
    return total;
}

}  // namespace qcp
