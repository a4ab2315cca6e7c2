#include "lexpfam/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexpfam/lambda_core.hpp"

namespace lexpfam {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_natural(const FamilyModel& model, const NaturalParam& theta) {
    if (!model.in_natural_domain(theta)) {
        throw InvalidParameter(model.name() + ": theta outside the natural parameter set");
    }
}

void require_dual(const FamilyModel& model, const DualParam& eta) {
    if (!model.in_dual_domain(eta)) {
        throw InvalidParameter(model.name() + ": eta outside the dual parameter set");
    }
}

// bases b_i = 1 + lambda theta.y_i
Vec bases(const FamilyModel& model, const NaturalParam& theta, const SufficientData& data) {
    const double lambda = model.curvature().value();
    Vec b(data.stats.size());
    for (std::size_t i = 0; i < data.stats.size(); ++i) {
        b[i] = 1.0 + lambda * dot(theta.coords(), data.stats[i]);
    }
    return b;
}

}  // namespace

SufficientData SufficientData::from_samples(const FamilyModel& model,
                                            std::vector<Vec> samples) {
    if (samples.empty()) {
        throw EmptyData(model.name() + ": need at least one sample");
    }
    SufficientData data;
    data.stats.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (static_cast<int>(samples[i].size()) != model.sample_arity()) {
            throw DimensionMismatch(model.name() + ": sample " + std::to_string(i) +
                                    " has arity " + std::to_string(samples[i].size()) +
                                    ", expected " + std::to_string(model.sample_arity()));
        }
        if (!model.in_support(samples[i])) {
            throw DomainError(model.name() + ": sample " + std::to_string(i) +
                              " is outside the support");
        }
        data.stats.push_back(model.statistic(samples[i]));
    }
    data.samples = std::move(samples);
    return data;
}

double log_density(const FamilyModel& model, const NaturalParam& theta, const Vec& x) {
    require_natural(model, theta);
    if (!model.in_support(x)) return kNegInf;
    const double lambda = model.curvature().value();
    const double t = lambda * dot(theta.coords(), model.statistic(x));
    if (!(1.0 + t > 0.0)) return kNegInf;  // positive-part convention
    return std::log1p(t) / lambda - model.potential(theta);
}

double log_likelihood(const FamilyModel& model, const NaturalParam& theta,
                      const SufficientData& data) {
    require_natural(model, theta);
    const double lambda = model.curvature().value();
    const double phi = model.potential(theta);
    double ll = 0.0;
    for (const Vec& y : data.stats) {
        const double t = lambda * dot(theta.coords(), y);
        if (!(1.0 + t > 0.0)) return kNegInf;
        ll += std::log1p(t) / lambda - phi;
    }
    return ll;
}

double log_likelihood_gap(const FamilyModel& model, const NaturalParam& theta1,
                          const NaturalParam& theta2, const SufficientData& data) {
    require_natural(model, theta1);
    require_natural(model, theta2);
    const double lambda = model.curvature().value();
    Vec delta(theta1.size());
    for (std::size_t j = 0; j < delta.size(); ++j) delta[j] = theta2[j] - theta1[j];
    double gap = 0.0;
    for (const Vec& y : data.stats) {
        const double b1 = 1.0 + lambda * dot(theta1.coords(), y);
        if (!(b1 > 0.0)) return std::numeric_limits<double>::infinity();
        const double r = lambda * dot(delta, y) / b1;  // (b2 - b1)/b1, no cancellation
        if (!(1.0 + r > 0.0)) return kNegInf;
        gap += std::log1p(r) / lambda;
    }
    gap -= data.n() * model.potential_gap(theta1, theta2);
    return gap;
}

WeightVector escort_weights(const FamilyModel& model, const NaturalParam& theta,
                            const SufficientData& data) {
    require_natural(model, theta);
    const Vec b = bases(model, theta, data);
    const std::size_t n = b.size();
    Vec logw(n);
    double m = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(b[i] > 0.0)) {
            throw DomainError(model.name() + ": weight base 1 + lambda theta.y_" +
                              std::to_string(i) + " = " + std::to_string(b[i]) +
                              " is not positive");
        }
        logw[i] = -std::log(b[i]);
        m = std::max(m, logw[i]);
    }
    double z = 0.0;
    for (double lw : logw) z += std::exp(lw - m);
    const double lse = m + std::log(z);
    WeightVector wv;
    wv.w.resize(n);
    for (std::size_t i = 0; i < n; ++i) wv.w[i] = std::exp(logw[i] - lse);
    return wv;
}

Vec kappa(const FamilyModel& model, const DualParam& eta, const SufficientData& data) {
    require_dual(model, eta);
    const NaturalParam theta = model.dual_inverse(eta);
    const double lambda = model.curvature().value();
    const double phi = model.potential(theta);
    // kappa_i = p(x_i; theta)^lambda = b_i * exp(-lambda phi)
    const Vec b = bases(model, theta, data);
    Vec k(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(b[i] > 0.0)) {
            throw DomainError(model.name() + ": kappa base for sample " + std::to_string(i) +
                              " is not positive");
        }
        k[i] = std::exp(std::log(b[i]) - lambda * phi);
    }
    return k;
}

double first_order_residual(const FamilyModel& model, const NaturalParam& theta,
                            const SufficientData& data) {
    const WeightVector wv = escort_weights(model, theta, data);
    Vec mean(data.dim(), 0.0);
    for (std::size_t i = 0; i < data.stats.size(); ++i) {
        for (int j = 0; j < data.dim(); ++j) mean[j] += wv.w[i] * data.stats[i][j];
    }
    return sup_norm_diff(model.dual_forward(theta).coords(), mean);
}

double dual_potential(const FamilyModel& model, const DualParam& eta) {
    require_dual(model, eta);
    const NaturalParam theta = model.dual_inverse(eta);
    return pairing(theta.coords(), eta.coords(), model.curvature()) - model.potential(theta);
}

DualParam escort_expectation(const FamilyModel& model, const NaturalParam& theta,
                             double abs_tol) {
    require_natural(model, theta);
    if (model.dim() > 2) {
        throw QuadratureFailure(model.name() + ": escort expectation oracle supports d <= 2");
    }
    const double lambda = model.curvature().value();
    const double power = 1.0 - lambda;  // escort exponent, validated against dual_forward

    auto escort = [&](const Vec& x) {
        const double lp = log_density(model, theta, x);
        return std::isfinite(lp) ? std::exp(power * lp) : 0.0;
    };

    const double denom = model.integrate(escort, abs_tol);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw QuadratureFailure(model.name() + ": escort normalizer did not stabilize");
    }
    Vec eta(model.dim());
    for (int j = 0; j < model.dim(); ++j) {
        auto weighted = [&](const Vec& x) { return model.statistic(x)[j] * escort(x); };
        eta[j] = model.integrate(weighted, abs_tol) / denom;
    }
    return DualParam(std::move(eta));
}

}  // namespace lexpfam
