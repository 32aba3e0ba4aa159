#pragma once

#include "qcp/overlap.hpp"

namespace qcp::special {

/// Chebyshev polynomial of the second kind U_degree(x), by forward recurrence
/// from U_{-1} = 0, U_0 = 1. Accepts degree >= -1.
double chebyshev_u(int degree, double x);

/// Characteristic polynomial of the boundary-perturbed tridiagonal matrix:
/// P_n(x) = U_n(x) - 2c U_{n-1}(x) + c^2 U_{n-2}(x).
double boundary_polynomial(int n, Overlap c, double x);

struct PhaseAmplitude {
    double amplitude;  ///< A(θ) = (1 - 2c cosθ + c^2) / sinθ
    double phase;      ///< δ(θ) in (0, π)
};

/// Decomposition P_n(cos θ) = A(θ) sin(nθ + δ(θ)), valid for every n >= 1.
/// Throws SingularArgument unless 0 < θ < π.
PhaseAmplitude phase_amplitude(double theta, Overlap c);

/// Complete elliptic integral of the first kind in the parameter convention,
/// K(m) = ∫_0^{π/2} (1 - m sin^2 θ)^{-1/2} dθ, via the arithmetic-geometric mean.
double elliptic_k(double m);

}  // namespace qcp::special
