#include "lexpfam/qgaussian.hpp"

#include <cmath>

#include "lexpfam/quadrature.hpp"
#include "lexpfam/rng.hpp"

namespace lexpfam {
namespace {

void require_qg_lambda(Curvature lam) {
    if (!(lam.value() > -2.0)) {
        throw InvalidParameter("qgaussian: lambda must lie in (-2, 0), got " +
                               std::to_string(lam.value()));
    }
}

void require_negative_theta(double theta) {
    if (!(theta < 0.0) || !std::isfinite(theta)) {
        throw InvalidParameter("qgaussian: theta must be finite and negative, got " +
                               std::to_string(theta));
    }
}

}  // namespace

double qg_c_lambda(Curvature lam) {
    require_qg_lambda(lam);
    const double b = -1.0 / lam.value();  // 1/|lambda| > 1/2
    return 0.5 * std::log(M_PI) + std::lgamma(b - 0.5) - std::lgamma(b) -
           0.5 * std::log(-lam.value());
}

double qg_potential(double theta, Curvature lam) {
    require_negative_theta(theta);
    return -0.5 * std::log(-theta) + qg_c_lambda(lam);
}

double qg_dual_forward(double theta, Curvature lam) {
    require_qg_lambda(lam);
    require_negative_theta(theta);
    return -1.0 / ((2.0 + lam.value()) * theta);
}

double qg_dual_inverse(double eta, Curvature lam) {
    require_qg_lambda(lam);
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InvalidParameter("qgaussian: eta must be finite and positive, got " +
                               std::to_string(eta));
    }
    return -1.0 / ((2.0 + lam.value()) * eta);
}

QGaussianModel::QGaussianModel(Curvature lam) : lam_(lam), c_lambda_(qg_c_lambda(lam)) {
#ifndef NDEBUG
    // normalization sanity check: exp(phi(theta)) must match the density
    // integral; only active in debug builds
    const double theta = -1.0;
    const double lambda = lam_.value();
    auto base_pow = [lambda, theta](const Vec& x) {
        return std::exp(std::log1p(lambda * theta * x[0] * x[0]) / lambda);
    };
    const double integral = integrate(base_pow, 1e-8);
    const double expected = std::exp(qg_potential(theta, lam_));
    if (std::abs(integral - expected) > 1e-6 * expected) {
        throw QuadratureFailure("qgaussian: C_lambda normalization check failed");
    }
#endif
}

Vec QGaussianModel::statistic(const Vec& x) const {
    if (x.size() != 1) throw DimensionMismatch("qgaussian: sample points are scalar");
    return Vec{x[0] * x[0]};
}

double QGaussianModel::potential(const NaturalParam& theta) const {
    if (theta.size() != 1) throw DimensionMismatch("qgaussian: theta has dimension 1");
    require_negative_theta(theta[0]);
    return -0.5 * std::log(-theta[0]) + c_lambda_;
}

Vec QGaussianModel::potential_gradient(const NaturalParam& theta) const {
    if (theta.size() != 1) throw DimensionMismatch("qgaussian: theta has dimension 1");
    require_negative_theta(theta[0]);
    return Vec{-0.5 / theta[0]};
}

DualParam QGaussianModel::dual_forward(const NaturalParam& theta) const {
    if (theta.size() != 1) throw DimensionMismatch("qgaussian: theta has dimension 1");
    return DualParam(qg_dual_forward(theta[0], lam_));
}

NaturalParam QGaussianModel::dual_inverse(const DualParam& eta) const {
    if (eta.size() != 1) throw DimensionMismatch("qgaussian: eta has dimension 1");
    return NaturalParam(qg_dual_inverse(eta[0], lam_));
}

bool QGaussianModel::in_natural_domain(const NaturalParam& theta) const {
    return theta.size() == 1 && theta[0] < 0.0;
}

bool QGaussianModel::in_dual_domain(const DualParam& eta) const {
    return eta.size() == 1 && eta[0] > 0.0;
}

double QGaussianModel::integrate(const std::function<double(const Vec&)>& g,
                                 double abs_tol) const {
    quad::Options opt;
    opt.abs_tol = abs_tol / 3.0;
    opt.rel_tol = 1e-3 * abs_tol;
    opt.max_segments = 8000;
    auto g1 = [&g](double x) { return g(Vec{x}); };
    // power-law tails become exponential in log coordinates, which the
    // rational compactification can actually resolve near lambda = -2
    auto tail = [&g1](double u, double sign) {
        const double x = std::exp(u);
        if (!std::isfinite(x)) return 0.0;  // integrable tails decayed long before overflow
        const double v = g1(sign * x);
        return (v == 0.0) ? 0.0 : v * x;
    };
    auto right_tail = [&tail](double u) { return tail(u, 1.0); };
    auto left_tail = [&tail](double u) { return tail(u, -1.0); };
    const double core = quad::integrate_or_throw(g1, -1.0, 1.0, opt);
    const double right = quad::integrate_or_throw(right_tail, 0.0, INFINITY, opt);
    const double left = quad::integrate_or_throw(left_tail, 0.0, INFINITY, opt);
    return core + right + left;
}

double QGaussianModel::potential_gap(const NaturalParam& a, const NaturalParam& b) const {
    if (a.size() != 1 || b.size() != 1) {
        throw DimensionMismatch("qgaussian: theta has dimension 1");
    }
    require_negative_theta(a[0]);
    require_negative_theta(b[0]);
    // C_lambda cancels exactly; the log difference goes through log1p
    return -0.5 * std::log1p((b[0] - a[0]) / a[0]);
}

std::vector<double> QGaussianModel::sample(double theta, int n, std::uint64_t seed) const {
    require_negative_theta(theta);
    if (n < 1) throw InvalidParameter("qgaussian: sample count must be >= 1");
    const double lambda = lam_.value();
    const double nu = 2.0 / -lambda - 1.0;        // > 0 since |lambda| < 2
    const double a = lambda * theta;              // = |lambda theta| > 0
    const double scale = 1.0 / std::sqrt(nu * a);
    Rng rng(seed);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = scale * rng.student_t(nu);
    return xs;
}

std::vector<Vec> as_points(const std::vector<double>& xs) {
    std::vector<Vec> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.push_back(Vec{x});
    return pts;
}

}  // namespace lexpfam
