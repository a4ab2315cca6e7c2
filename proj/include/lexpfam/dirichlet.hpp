#pragma once

#include <cstdint>

#include "lexpfam/family.hpp"

namespace lexpfam {

/// Strictly positive probability vector on the open simplex, components
/// indexed 0..d. Validates positivity (>= 1e-300), components in (0,1) and
/// sum within 1e-12 of one, then renormalizes exactly.
class SimplexPoint {
public:
    explicit SimplexPoint(Vec p);

    static SimplexPoint barycenter(int d);

    [[nodiscard]] const Vec& coords() const noexcept { return p_; }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(p_.size()) - 1; }
    double operator[](std::size_t i) const { return p_[i]; }

private:
    Vec p_;
};

/// Aitchison perturbation: componentwise product, renormalized. Commutative
/// and associative; the barycenter is the identity.
SimplexPoint perturb(const SimplexPoint& p, const SimplexPoint& q);

/// Aitchison difference: componentwise ratio, renormalized. p - p is the
/// barycenter.
SimplexPoint difference(const SimplexPoint& p, const SimplexPoint& q);

/// Natural parameter theta^i = p^0 / (lambda p^i), all components negative.
NaturalParam dp_theta_from_p(const SimplexPoint& p, Curvature lam);

/// Recover p from the dual parameter: p^0 = 1/(1 + sum eta), p^i = eta^i p^0.
SimplexPoint dp_p_from_eta(const DualParam& eta);

/// One simplex-space MLE step: p + (Euclidean mean of (q_i - p)). Never
/// reads lambda; equivalent to the dual-space fixed-point step mapped back
/// through the p/eta correspondence.
SimplexPoint dp_simplex_update(const SimplexPoint& p, const std::vector<SimplexPoint>& data);

/// n i.i.d. draws of Q = p (+) D with D Dirichlet(1/(sigma(1+d)), ...).
/// Deterministic for a given seed.
std::vector<SimplexPoint> dp_sample(const SimplexPoint& p, double sigma, int n,
                                    std::uint64_t seed);

// Dirichlet perturbation as a d-dimensional family with lambda = -sigma:
// state space the open simplex, F(q) = (q^1/q^0, ..., q^d/q^0),
// phi(theta) = (1/(lambda(1+d))) sum log(-theta^i), Theta = (-inf,0)^d,
// Xi = (0,inf)^d. The reference measure density against Lebesgue dq^1..dq^d
// is m(q) = C_alpha sigma^(d alpha) (q^0)^(-1-d alpha) prod_i (q^i)^(alpha-1)
// with alpha = 1/(sigma(1+d)); it is what makes densities of the family form
// with the potential above integrate to one.
class DirichletPerturbationModel final : public FamilyModel {
public:
    DirichletPerturbationModel(double sigma, int d);

    [[nodiscard]] Curvature curvature() const override { return lam_; }
    [[nodiscard]] int dim() const override { return d_; }
    [[nodiscard]] int sample_arity() const override { return d_ + 1; }
    [[nodiscard]] std::string name() const override { return "dirichlet"; }

    [[nodiscard]] Vec statistic(const Vec& x) const override;
    [[nodiscard]] double potential(const NaturalParam& theta) const override;
    [[nodiscard]] Vec potential_gradient(const NaturalParam& theta) const override;
    [[nodiscard]] DualParam dual_forward(const NaturalParam& theta) const override;
    [[nodiscard]] NaturalParam dual_inverse(const DualParam& eta) const override;
    [[nodiscard]] bool in_natural_domain(const NaturalParam& theta) const override;
    [[nodiscard]] bool in_dual_domain(const DualParam& eta) const override;
    [[nodiscard]] bool in_support(const Vec& x) const override;

    [[nodiscard]] double integrate(const std::function<double(const Vec&)>& g,
                                   double abs_tol) const override;

    [[nodiscard]] double potential_gap(const NaturalParam& a,
                                       const NaturalParam& b) const override;

    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] double alpha() const { return alpha_; }  // Dirichlet concentration

    /// log of the reference measure density m(q) against Lebesgue.
    [[nodiscard]] double reference_log_density(const Vec& q) const;

    /// Sampler on SimplexPoints, delegating to dp_sample with this sigma.
    [[nodiscard]] std::vector<SimplexPoint> sample(const SimplexPoint& p, int n,
                                                   std::uint64_t seed) const;

private:
    double sigma_;
    int d_;
    Curvature lam_;
    double alpha_;
};

/// Convert simplex points to raw sample vectors for SufficientData.
std::vector<Vec> as_points(const std::vector<SimplexPoint>& qs);

}  // namespace lexpfam
