#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lexpfam/types.hpp"

namespace lexpfam {

// Abstract contract for a lambda-exponential family
//   p(x; theta) = (1 + lambda theta.F(x))_+^(1/lambda) exp(-phi(theta)).
// Concrete families supply the statistic, the potential with its exact
// normalization constant, closed-form dual maps, domain tests, and a
// quadrature rule over their state space (used only by test oracles).
class FamilyModel {
public:
    virtual ~FamilyModel() = default;

    [[nodiscard]] virtual Curvature curvature() const = 0;
    [[nodiscard]] virtual int dim() const = 0;           // d = dim of theta and eta
    [[nodiscard]] virtual int sample_arity() const = 0;  // components of a raw sample point
    [[nodiscard]] virtual std::string name() const = 0;

    [[nodiscard]] virtual Vec statistic(const Vec& x) const = 0;  // y = F(x)
    [[nodiscard]] virtual double potential(const NaturalParam& theta) const = 0;
    [[nodiscard]] virtual Vec potential_gradient(const NaturalParam& theta) const = 0;
    [[nodiscard]] virtual DualParam dual_forward(const NaturalParam& theta) const = 0;
    [[nodiscard]] virtual NaturalParam dual_inverse(const DualParam& eta) const = 0;
    [[nodiscard]] virtual bool in_natural_domain(const NaturalParam& theta) const = 0;
    [[nodiscard]] virtual bool in_dual_domain(const DualParam& eta) const = 0;
    [[nodiscard]] virtual bool in_support(const Vec& x) const = 0;

    /// Integral of g over the state space against the family's reference
    /// measure, by adaptive quadrature. Throws QuadratureFailure when the
    /// estimate does not stabilize or the dimension is unsupported.
    [[nodiscard]] virtual double integrate(const std::function<double(const Vec&)>& g,
                                           double abs_tol) const = 0;

    /// phi(b) - phi(a). Concrete families override with a cancellation-free
    /// form so the difference stays accurate when a and b nearly coincide.
    [[nodiscard]] virtual double potential_gap(const NaturalParam& a,
                                               const NaturalParam& b) const {
        return potential(b) - potential(a);
    }
};

/// The n x d sufficient-statistic matrix y_i = F(x_i) together with the
/// originating samples. Construction validates support membership.
struct SufficientData {
    std::vector<Vec> samples;
    std::vector<Vec> stats;

    [[nodiscard]] int n() const { return static_cast<int>(stats.size()); }
    [[nodiscard]] int dim() const { return stats.empty() ? 0 : static_cast<int>(stats[0].size()); }

    static SufficientData from_samples(const FamilyModel& model, std::vector<Vec> samples);
};

/// Positive weights summing to one.
struct WeightVector {
    Vec w;
    [[nodiscard]] int n() const { return static_cast<int>(w.size()); }
};

/// log p(x; theta); -infinity outside the positive-part support.
double log_density(const FamilyModel& model, const NaturalParam& theta, const Vec& x);

/// Sum of log densities over the data; -infinity if any base is nonpositive.
double log_likelihood(const FamilyModel& model, const NaturalParam& theta,
                      const SufficientData& data);

/// l(theta2) - l(theta1), evaluated through base ratios
///   (1/lambda) log(b_i(theta2)/b_i(theta1)) - n (phi(theta2) - phi(theta1)),
/// which resolves increments far below the rounding of the two totals.
double log_likelihood_gap(const FamilyModel& model, const NaturalParam& theta1,
                          const NaturalParam& theta2, const SufficientData& data);

/// Normalized weights w_i proportional to 1/(1 + lambda theta.y_i), computed
/// through log-bases with log-sum-exp normalization. Throws DomainError if
/// any base is nonpositive.
WeightVector escort_weights(const FamilyModel& model, const NaturalParam& theta,
                            const SufficientData& data);

/// kappa_i(eta) = p(x_i; theta)^lambda with theta = dual_inverse(eta).
Vec kappa(const FamilyModel& model, const DualParam& eta, const SufficientData& data);

/// Sup-norm distance between dual_forward(theta) and the escort-weighted
/// statistic mean; zero exactly at stationary points of the likelihood.
double first_order_residual(const FamilyModel& model, const NaturalParam& theta,
                            const SufficientData& data);

/// Dual potential psi(eta), evaluated in closed form through the
/// Fenchel-Young identity at theta = dual_inverse(eta).
double dual_potential(const FamilyModel& model, const DualParam& eta);

/// Quadrature oracle for the dual parameter: the escort expectation
///   E[F] under the density proportional to p(x; theta)^(1-lambda) dnu.
/// Approximates dual_forward(theta); test oracle only.
DualParam escort_expectation(const FamilyModel& model, const NaturalParam& theta,
                             double abs_tol);

}  // namespace lexpfam
