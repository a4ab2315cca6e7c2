#pragma once

#include <functional>
#include <limits>

#include "lexpfam/types.hpp"

namespace lexpfam::quad {

// Globally adaptive Gauss-Kronrod (G7,K15) quadrature. The worst interval
// (by Kronrod-Gauss discrepancy) is bisected until the accumulated error
// estimate meets the tolerance or the segment budget runs out. Infinite
// endpoints are handled by rational substitutions; all nodes are interior,
// so integrable endpoint singularities only cost extra subdivisions.

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_segments = 4000;
};

struct Outcome {
    double value = 0.0;
    double error_estimate = std::numeric_limits<double>::infinity();
    long evaluations = 0;
    bool converged = false;
};

/// Integrate f over [a, b] with finite endpoints.
Outcome integrate_finite(const std::function<double(double)>& f, double a, double b,
                         const Options& opt = {});

/// Integrate f over (a, b); either endpoint may be +/-infinity.
Outcome integrate(const std::function<double(double)>& f, double a, double b,
                  const Options& opt = {});

/// Convenience wrapper: integrate and throw QuadratureFailure if the estimate
/// did not stabilize to the requested tolerance.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const Options& opt = {});

}  // namespace lexpfam::quad
