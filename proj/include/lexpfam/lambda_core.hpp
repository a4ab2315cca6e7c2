#pragma once

#include <functional>

#include "lexpfam/types.hpp"

namespace lexpfam {

/// The pairing (1/lambda) log(1 + lambda u.v) that replaces the inner
/// product. Converges to u.v as lambda -> 0-. Throws DomainError when
/// 1 + lambda u.v <= 0.
double pairing(const Vec& u, const Vec& v, Curvature lam);

/// The lambda-gradient map eta = grad / (1 - lambda grad.theta), sending a
/// Euclidean gradient of the potential at theta to the dual parameter.
DualParam lambda_gradient(const Vec& grad, const NaturalParam& theta, Curvature lam);

/// Signed Fenchel-Young gap phi(theta) + psi(eta) - pairing(theta, eta).
/// Nonnegative everywhere; zero exactly on dual pairs.
double fenchel_young_residual(const NaturalParam& theta, const DualParam& eta,
                              double phi_val, double psi_val, Curvature lam);

/// Axis-aligned search region for the numeric conjugate.
struct Box {
    Vec lo;
    Vec hi;
};

/// Brute-force evaluation of the lambda-conjugate
///   sup over t in box of pairing(t, y) - f(t),
/// by a uniform grid followed by coordinate-wise golden-section polish.
/// Returns a lower bound of the true supremum that converges under grid
/// refinement. Test oracle only; never part of the solver path.
/// Throws NoFeasiblePoint when the pairing domain misses the box entirely.
double numeric_conjugate(const std::function<double(const Vec&)>& f, const Vec& y,
                         Curvature lam, const Box& box, int grid_points,
                         Vec* maximizer = nullptr);

}  // namespace lexpfam
