#pragma once

#include <cmath>
#include <string>

#include "qcp/errors.hpp"

namespace qcp {

/// Overlap c = <0|φ> between the default and the mutated qubit state.
///
/// c is real and lies in [0, 1). At c = 1 the two states coincide and the
/// source states stop being linearly independent, so construction rejects it.
class Overlap {
public:
    explicit Overlap(double c) : c_(c) {
        if (!std::isfinite(c) || c < 0.0) {
            throw InvalidArgument("overlap must be a finite value >= 0, got " + std::to_string(c));
        }
        if (c >= 1.0) {
            throw DegenerateEnsemble("overlap c >= 1: source states are linearly dependent");
        }
    }

    static Overlap from_c2(double c2) {
        if (!std::isfinite(c2) || c2 < 0.0) {
            throw InvalidArgument("c^2 must be a finite value >= 0, got " + std::to_string(c2));
        }
        return Overlap(std::sqrt(c2));
    }

    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double c2() const noexcept { return c_ * c_; }
    /// Amplitude of |1> in the mutated state, sqrt(1 - c^2).
    [[nodiscard]] double s() const noexcept { return std::sqrt(1.0 - c_ * c_); }

private:
    double c_;
};

}  // namespace qcp
