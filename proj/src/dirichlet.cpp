#include "lexpfam/dirichlet.hpp"

#include <cmath>
#include <numeric>

#include "lexpfam/quadrature.hpp"
#include "lexpfam/rng.hpp"

namespace lexpfam {
namespace {

constexpr double kComponentFloor = 1e-300;
constexpr double kSumTol = 1e-12;

Vec normalized_or_throw(Vec p, const char* what) {
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < kComponentFloor) {
            throw DomainError(std::string(what) + ": component " + std::to_string(x) +
                              " below the positivity floor");
        }
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

}  // namespace

SimplexPoint::SimplexPoint(Vec p) {
    if (p.size() < 2) {
        throw InvalidParameter("SimplexPoint: need at least two components");
    }
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || !(x > 0.0) || !(x < 1.0)) {
            throw InvalidParameter("SimplexPoint: components must lie strictly in (0,1)");
        }
        if (x < kComponentFloor) {
            throw InvalidParameter("SimplexPoint: component below 1e-300");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
        throw InvalidParameter("SimplexPoint: components sum to " + std::to_string(sum) +
                               ", not 1 within 1e-12");
    }
    for (double& x : p) x /= sum;
    p_ = std::move(p);
}

SimplexPoint SimplexPoint::barycenter(int d) {
    if (d < 1) throw InvalidParameter("SimplexPoint: dimension must be >= 1");
    return SimplexPoint(Vec(static_cast<std::size_t>(d) + 1, 1.0 / (d + 1)));
}

SimplexPoint perturb(const SimplexPoint& p, const SimplexPoint& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("perturb: dimensions differ");
    Vec out(p.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] * q[i];
    return SimplexPoint(normalized_or_throw(std::move(out), "perturb"));
}

SimplexPoint difference(const SimplexPoint& p, const SimplexPoint& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("difference: dimensions differ");
    Vec out(p.coords().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p[i] / q[i];
    return SimplexPoint(normalized_or_throw(std::move(out), "difference"));
}

NaturalParam dp_theta_from_p(const SimplexPoint& p, Curvature lam) {
    Vec theta(static_cast<std::size_t>(p.dim()));
    for (int i = 1; i <= p.dim(); ++i) {
        theta[static_cast<std::size_t>(i) - 1] = p[0] / (lam.value() * p[static_cast<std::size_t>(i)]);
    }
    return NaturalParam(std::move(theta));
}

SimplexPoint dp_p_from_eta(const DualParam& eta) {
    double s = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (!(eta[i] > 0.0)) {
            throw InvalidParameter("dp_p_from_eta: eta components must be positive");
        }
        s += eta[i];
    }
    Vec p(eta.size() + 1);
    p[0] = 1.0 / (1.0 + s);
    for (std::size_t i = 0; i < eta.size(); ++i) p[i + 1] = eta[i] * p[0];
    return SimplexPoint(std::move(p));
}

SimplexPoint dp_simplex_update(const SimplexPoint& p, const std::vector<SimplexPoint>& data) {
    if (data.empty()) throw EmptyData("dp_simplex_update: no data points");
    Vec mean(p.coords().size(), 0.0);
    for (const SimplexPoint& q : data) {
        const SimplexPoint r = difference(q, p);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += r[i];
    }
    for (double& x : mean) x /= static_cast<double>(data.size());
    return perturb(p, SimplexPoint(std::move(mean)));
}

std::vector<SimplexPoint> dp_sample(const SimplexPoint& p, double sigma, int n,
                                    std::uint64_t seed) {
    if (!(sigma > 0.0)) throw InvalidParameter("dp_sample: sigma must be positive");
    if (n < 1) throw InvalidParameter("dp_sample: sample count must be >= 1");
    const double alpha = 1.0 / (sigma * (p.dim() + 1));
    const Vec conc(p.coords().size(), alpha);
    Rng rng(seed);
    std::vector<SimplexPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.push_back(perturb(p, SimplexPoint(rng.dirichlet(conc))));
    }
    return out;
}

DirichletPerturbationModel::DirichletPerturbationModel(double sigma, int d)
    : sigma_((sigma > 0.0 && std::isfinite(sigma))
                 ? sigma
                 : throw InvalidParameter("dirichlet: sigma must be finite and positive")),
      d_(d >= 1 ? d : throw InvalidParameter("dirichlet: dimension must be >= 1")),
      lam_(-sigma),
      alpha_(1.0 / (sigma * (d + 1))) {}

Vec DirichletPerturbationModel::statistic(const Vec& x) const {
    if (static_cast<int>(x.size()) != d_ + 1) {
        throw DimensionMismatch("dirichlet: sample points have d+1 components");
    }
    Vec y(static_cast<std::size_t>(d_));
    for (int i = 1; i <= d_; ++i) y[static_cast<std::size_t>(i) - 1] = x[static_cast<std::size_t>(i)] / x[0];
    return y;
}

double DirichletPerturbationModel::potential(const NaturalParam& theta) const {
    if (static_cast<int>(theta.size()) != d_) {
        throw DimensionMismatch("dirichlet: theta has dimension d");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!(theta[i] < 0.0)) {
            throw InvalidParameter("dirichlet: theta components must be negative");
        }
        s += std::log(-theta[i]);
    }
    return s / (lam_.value() * (1.0 + d_));
}

Vec DirichletPerturbationModel::potential_gradient(const NaturalParam& theta) const {
    if (static_cast<int>(theta.size()) != d_) {
        throw DimensionMismatch("dirichlet: theta has dimension d");
    }
    Vec g(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        g[i] = 1.0 / (lam_.value() * (1.0 + d_) * theta[i]);
    }
    return g;
}

DualParam DirichletPerturbationModel::dual_forward(const NaturalParam& theta) const {
    if (static_cast<int>(theta.size()) != d_) {
        throw DimensionMismatch("dirichlet: theta has dimension d");
    }
    Vec eta(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) eta[i] = 1.0 / (lam_.value() * theta[i]);
    return DualParam(std::move(eta));
}

NaturalParam DirichletPerturbationModel::dual_inverse(const DualParam& eta) const {
    if (static_cast<int>(eta.size()) != d_) {
        throw DimensionMismatch("dirichlet: eta has dimension d");
    }
    Vec theta(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) theta[i] = 1.0 / (lam_.value() * eta[i]);
    return NaturalParam(std::move(theta));
}

bool DirichletPerturbationModel::in_natural_domain(const NaturalParam& theta) const {
    if (static_cast<int>(theta.size()) != d_) return false;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (!(theta[i] < 0.0)) return false;
    }
    return true;
}

bool DirichletPerturbationModel::in_dual_domain(const DualParam& eta) const {
    if (static_cast<int>(eta.size()) != d_) return false;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (!(eta[i] > 0.0)) return false;
    }
    return true;
}

bool DirichletPerturbationModel::in_support(const Vec& x) const {
    if (static_cast<int>(x.size()) != d_ + 1) return false;
    double sum = 0.0;
    for (double c : x) {
        if (!std::isfinite(c) || !(c > 0.0) || !(c < 1.0) || c < kComponentFloor) return false;
        sum += c;
    }
    return std::abs(sum - 1.0) <= kSumTol;
}

double DirichletPerturbationModel::reference_log_density(const Vec& q) const {
    const double a = alpha_;
    const double log_c = std::lgamma((1.0 + d_) * a) - (1.0 + d_) * std::lgamma(a);
    double s = log_c + d_ * a * std::log(sigma_) + (-1.0 - d_ * a) * std::log(q[0]);
    for (int i = 1; i <= d_; ++i) s += (a - 1.0) * std::log(q[static_cast<std::size_t>(i)]);
    return s;
}

double DirichletPerturbationModel::integrate(const std::function<double(const Vec&)>& g,
                                             double abs_tol) const {
    if (d_ > 2) {
        throw QuadratureFailure("dirichlet: quadrature supports d <= 2");
    }
    auto with_measure = [&](Vec q) {
        // quadrature nodes are interior, but 1 - q1 - q2 can round to <= 0
        for (double c : q) {
            if (!(c > 0.0)) return 0.0;
        }
        const double val = g(q);
        if (val == 0.0) return 0.0;
        return val * std::exp(reference_log_density(q));
    };

    quad::Options inner;
    inner.abs_tol = 0.05 * abs_tol;
    inner.rel_tol = 1e-9;
    inner.max_segments = 2000;
    quad::Options outer;
    outer.abs_tol = 0.5 * abs_tol;
    outer.rel_tol = 1e-9;
    outer.max_segments = 2000;

    if (d_ == 1) {
        auto f = [&](double q1) { return with_measure(Vec{1.0 - q1, q1}); };
        return quad::integrate_or_throw(f, 0.0, 1.0, outer);
    }
    auto f_outer = [&](double q1) {
        auto f_inner = [&](double q2) { return with_measure(Vec{1.0 - q1 - q2, q1, q2}); };
        return quad::integrate(f_inner, 0.0, 1.0 - q1, inner).value;
    };
    return quad::integrate_or_throw(f_outer, 0.0, 1.0, outer);
}

double DirichletPerturbationModel::potential_gap(const NaturalParam& a,
                                                 const NaturalParam& b) const {
    if (static_cast<int>(a.size()) != d_ || static_cast<int>(b.size()) != d_) {
        throw DimensionMismatch("dirichlet: theta has dimension d");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] < 0.0) || !(b[i] < 0.0)) {
            throw InvalidParameter("dirichlet: theta components must be negative");
        }
        s += std::log1p((b[i] - a[i]) / a[i]);
    }
    return s / (lam_.value() * (1.0 + d_));
}

std::vector<SimplexPoint> DirichletPerturbationModel::sample(const SimplexPoint& p, int n,
                                                             std::uint64_t seed) const {
    if (p.dim() != d_) throw DimensionMismatch("dirichlet: sample dimension mismatch");
    return dp_sample(p, sigma_, n, seed);
}

std::vector<Vec> as_points(const std::vector<SimplexPoint>& qs) {
    std::vector<Vec> pts;
    pts.reserve(qs.size());
    for (const SimplexPoint& q : qs) pts.push_back(q.coords());
    return pts;
}

}  // namespace lexpfam
