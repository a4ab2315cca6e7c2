#pragma once

#include <cstdint>

#include "lexpfam/family.hpp"

namespace lexpfam {

/// Potential phi(theta) = -1/2 log(-theta) + C_lambda of the one-dimensional
/// q-Gaussian scale family, with the exact normalization constant.
double qg_potential(double theta, Curvature lam);

/// Normalization constant C_lambda = log(sqrt(pi) Gamma(1/|lambda| - 1/2) /
/// Gamma(1/|lambda|)) - 1/2 log(-lambda). Requires lambda in (-2, 0).
double qg_c_lambda(Curvature lam);

/// Dual map eta = -1/((2+lambda) theta), positive for theta < 0.
double qg_dual_forward(double theta, Curvature lam);

/// Inverse dual map theta = -1/((2+lambda) eta).
double qg_dual_inverse(double eta, Curvature lam);

// The q-Gaussian scale family: state space R, statistic F(x) = x^2,
// Theta = (-inf, 0), Xi = (0, inf). For lambda in (-2, 0) and theta < 0 the
// density base 1 + lambda theta x^2 is >= 1, so the support is all of R.
class QGaussianModel final : public FamilyModel {
public:
    explicit QGaussianModel(Curvature lam);

    [[nodiscard]] Curvature curvature() const override { return lam_; }
    [[nodiscard]] int dim() const override { return 1; }
    [[nodiscard]] int sample_arity() const override { return 1; }
    [[nodiscard]] std::string name() const override { return "qgaussian"; }

    [[nodiscard]] Vec statistic(const Vec& x) const override;
    [[nodiscard]] double potential(const NaturalParam& theta) const override;
    [[nodiscard]] Vec potential_gradient(const NaturalParam& theta) const override;
    [[nodiscard]] DualParam dual_forward(const NaturalParam& theta) const override;
    [[nodiscard]] NaturalParam dual_inverse(const DualParam& eta) const override;
    [[nodiscard]] bool in_natural_domain(const NaturalParam& theta) const override;
    [[nodiscard]] bool in_dual_domain(const DualParam& eta) const override;
    [[nodiscard]] bool in_support(const Vec& x) const override { return x.size() == 1; }

    [[nodiscard]] double integrate(const std::function<double(const Vec&)>& g,
                                   double abs_tol) const override;

    [[nodiscard]] double potential_gap(const NaturalParam& a,
                                       const NaturalParam& b) const override;

    [[nodiscard]] double c_lambda() const { return c_lambda_; }

    /// n i.i.d. draws from p(.; theta): a Student-t with nu = 2/|lambda| - 1
    /// degrees of freedom rescaled by 1/sqrt(nu |lambda theta|).
    /// Deterministic for a given seed.
    [[nodiscard]] std::vector<double> sample(double theta, int n, std::uint64_t seed) const;

private:
    Curvature lam_;
    double c_lambda_;  // cached, constant across theta for the scale family
};

/// Wrap scalar draws as one-component sample points for SufficientData.
std::vector<Vec> as_points(const std::vector<double>& xs);

}  // namespace lexpfam
