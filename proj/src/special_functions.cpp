#include "qcp/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qcp::special {

double chebyshev_u(int degree, double x) {
    if (degree < -1) {
        throw InvalidArgument("chebyshev_u: degree must be >= -1, got " + std::to_string(degree));
    }
    if (degree == -1) return 0.0;
    double prev = 0.0;  // U_{-1}
    double curr = 1.0;  // U_0
    for (int k = 1; k <= degree; ++k) {
        const double next = 2.0 * x * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double boundary_polynomial(int n, Overlap c, double x) {
    if (n < 1) {
        throw InvalidArgument("boundary_polynomial: n must be >= 1, got " + std::to_string(n));
    }
    // One pass of the recurrence yields U_{n-2}, U_{n-1} and U_n together.
    double u_nm2 = 0.0;  // U_{-1}
    double u_nm1 = 1.0;  // U_0
    double u_n = 2.0 * x;
    for (int k = 2; k <= n; ++k) {
        u_nm2 = u_nm1;
        u_nm1 = u_n;
        u_n = 2.0 * x * u_nm1 - u_nm2;
    }
    const double cc = c.c();
    return u_n - 2.0 * cc * u_nm1 + cc * cc * u_nm2;
}

PhaseAmplitude phase_amplitude(double theta, Overlap c) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw SingularArgument("phase_amplitude: theta must lie strictly inside (0, pi)");
    }
    const double cc = c.c();
    const double sin_t = std::sin(theta);
    const double cos_t = std::cos(theta);
    const double amplitude = (1.0 - 2.0 * cc * cos_t + cc * cc) / sin_t;
    double phase = std::atan2((1.0 - cc * cc) * sin_t, (1.0 + cc * cc) * cos_t - 2.0 * cc);
    if (phase <= 0.0) phase += std::numbers::pi;
    return {amplitude, phase};
}

double elliptic_k(double m) {
    if (!std::isfinite(m) || m < 0.0) {
        throw InvalidArgument("elliptic_k: parameter m must be >= 0");
    }
    if (m >= 1.0) {
        throw DivergentArgument("elliptic_k: K(m) diverges for m >= 1");
    }
    if (m == 0.0) return std::numbers::pi / 2.0;

    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    constexpr int kMaxIterations = 60;
    for (int it = 0; it < kMaxIterations; ++it) {
        if (std::abs(a - b) <= 1e-15 * a) {
            return std::numbers::pi / (2.0 * a);
        }
        const double next_a = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = next_a;
    }
    return std::numbers::pi / (a + b);
}

}  // namespace qcp::special
