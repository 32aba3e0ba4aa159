#pragma once

#include <stdexcept>
#include <string>

namespace qcp {

/// Bad argument value (negative degree, unnormalized prior, non-symmetric input, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument sits on a singular point of a closed form (θ = 0 or π).
class SingularArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Elliptic parameter m >= 1, where K(m) diverges.
class DivergentArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Source states are not linearly independent (c >= 1 or a rank-deficient Gram matrix).
class DegenerateEnsemble : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Root search or eigensolver could not produce a full spectrum.
class SpectralFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bayes update requested for an outcome of zero predicted probability.
class ImpossibleOutcome : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Problem size exceeds what an exhaustive routine is willing to handle.
class ResourceLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace qcp
