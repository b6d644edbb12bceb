// errors.hpp — Exception types for numerical failure modes.
//
// std::invalid_argument is used for precondition violations; the types
// here mark runtime numerical failures so callers (notably the CLI) can
// map them to distinct exit statuses.

#pragma once

#include <stdexcept>
#include <string>

namespace aqrm {

// Iterative procedure exceeded its sweep/truncation budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A requested evaluation sits on (or numerically too close to) a spectral
// degeneracy, where the mixing angle is undefined.
struct DegeneracyError : std::runtime_error {
    explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

// A loop or evaluation point violates the minimum distance to a conical
// intersection; carries the offending CI coordinates.
struct ProximityError : std::runtime_error {
    double ci_g{0.0};
    double ci_epsilon{0.0};
    ProximityError(const std::string& what, double g, double epsilon)
        : std::runtime_error(what), ci_g(g), ci_epsilon(epsilon) {}
};

}  // namespace aqrm
