#include "lexpfam/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lexpfam {

std::string to_string(Termination t) {
    switch (t) {
        case Termination::step_converged: return "step-converged";
        case Termination::residual_converged: return "residual-converged";
        case Termination::max_iter: return "max-iter";
        case Termination::monotonicity_violation: return "monotonicity-violation";
    }
    return "unknown";
}

Termination termination_from_string(const std::string& s) {
    if (s == "step-converged") return Termination::step_converged;
    if (s == "residual-converged") return Termination::residual_converged;
    if (s == "max-iter") return Termination::max_iter;
    if (s == "monotonicity-violation") return Termination::monotonicity_violation;
    throw ParseError("unknown termination reason: " + s);
}

namespace {

Vec weighted_stat_mean(const WeightVector& wv, const SufficientData& data) {
    Vec mean(static_cast<std::size_t>(data.dim()), 0.0);
    for (std::size_t i = 0; i < data.stats.size(); ++i) {
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += wv.w[i] * data.stats[i][j];
    }
    return mean;
}

}  // namespace

DualParam step(const FamilyModel& model, const DualParam& eta, const SufficientData& data) {
    if (!model.in_dual_domain(eta)) {
        throw InvalidParameter(model.name() + ": step: eta outside the dual parameter set");
    }
    const NaturalParam theta = model.dual_inverse(eta);
    const WeightVector wv = escort_weights(model, theta, data);
    return DualParam(weighted_stat_mean(wv, data));
}

DualParam sample_mean_init(const FamilyModel& model, const SufficientData& data) {
    if (data.stats.empty()) throw EmptyData("sample_mean_init: no data");
    Vec mean(static_cast<std::size_t>(data.dim()), 0.0);
    for (const Vec& y : data.stats) {
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += y[j];
    }
    for (double& m : mean) m /= static_cast<double>(data.n());
    DualParam eta(std::move(mean));
    if (!model.in_dual_domain(eta)) {
        throw InvalidParameter(model.name() +
                               ": sample mean of the statistic lies outside the dual domain");
    }
    return eta;
}

FitResult solve(const FamilyModel& model, const SufficientData& data,
                const SolverConfig& config) {
    if (data.stats.empty()) throw EmptyData("solve: no data");
    if (config.init_theta && config.init_eta) {
        throw InitializationError("solve: give at most one of init_theta / init_eta");
    }

    DualParam eta = [&]() -> DualParam {
        try {
            if (config.init_theta) {
                if (!model.in_natural_domain(*config.init_theta)) {
                    throw InitializationError("solve: init theta outside the natural domain");
                }
                return model.dual_forward(*config.init_theta);
            }
            if (config.init_eta) {
                if (!model.in_dual_domain(*config.init_eta)) {
                    throw InitializationError("solve: init eta outside the dual domain");
                }
                return *config.init_eta;
            }
            return sample_mean_init(model, data);
        } catch (const InvalidParameter& e) {
            throw InitializationError(e.what());
        }
    }();

    SolverTrace trace;
    trace.lambda = model.curvature().value();

    int k = 0;
    double prev_step_norm = 0.0;
    double prev_loglik = -std::numeric_limits<double>::infinity();
    std::optional<Termination> pending;
    Termination termination = Termination::max_iter;

    int best_index = 0;
    double best_loglik = -std::numeric_limits<double>::infinity();

    for (;;) {
        const NaturalParam theta = model.dual_inverse(eta);
        WeightVector wv;
        double ll = 0.0;
        try {
            wv = escort_weights(model, theta, data);
            ll = log_likelihood(model, theta, data);
        } catch (const DomainError& e) {
            throw DomainError("iteration " + std::to_string(k) + ": " + e.what());
        }

        trace.records.push_back(TraceRecord{k, eta, theta, ll, prev_step_norm, wv});
        if (ll > best_loglik) {
            best_loglik = ll;
            best_index = k;
        }

        if (k > 0 && ll < prev_loglik - config.monotonicity_slack * (1.0 + std::abs(prev_loglik))) {
            termination = Termination::monotonicity_violation;
            break;
        }
        if (pending) {
            termination = *pending;
            break;
        }
        if (k == config.max_iter) {
            termination = Termination::max_iter;
            break;
        }

        const Vec next = weighted_stat_mean(wv, data);
        const double step_norm = sup_norm_diff(next, eta.coords());
        const double residual = sup_norm_diff(model.dual_forward(theta).coords(), next);
        if (residual <= config.tol_residual) {
            pending = Termination::residual_converged;
        } else if (step_norm <= config.tol_step) {
            pending = Termination::step_converged;
        }

        prev_loglik = ll;
        prev_step_norm = step_norm;
        eta = DualParam(next);
        ++k;
    }

    trace.termination = termination;

    // report the best iterate on a violation, the final one otherwise
    const int report_index =
        (termination == Termination::monotonicity_violation) ? best_index : k;
    const TraceRecord& rec = trace.records[static_cast<std::size_t>(report_index)];

    FitResult result{rec.theta, rec.eta, rec.loglik, k,
                     first_order_residual(model, rec.theta, data), termination,
                     SolverTrace{}};
    if (config.keep_trace) {
        result.trace = std::move(trace);
    } else {
        result.trace.lambda = trace.lambda;
        result.trace.termination = termination;
    }
    return result;
}

AuditReport monotonicity_audit(const SolverTrace& trace, double slack) {
    AuditReport report;
    const auto& recs = trace.records;
    if (recs.size() < 2) return report;

    const double lambda = trace.lambda;
    const std::size_t n = recs[0].weights.w.size();

    // log kappa_i(k), recovered from weights and log likelihood
    auto log_kappas = [&](const TraceRecord& r) {
        Vec lk(n);
        double sum_logw = 0.0;
        for (double w : r.weights.w) sum_logw += std::log(w);
        const double log_z = (-lambda * r.loglik - sum_logw) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) lk[i] = -log_z - std::log(r.weights.w[i]);
        return lk;
    };

    Vec prev = log_kappas(recs[0]);
    for (std::size_t k = 1; k < recs.size(); ++k) {
        const TraceRecord& r = recs[k];
        const double l_prev = recs[k - 1].loglik;
        if (r.loglik < l_prev - slack * (1.0 + std::abs(l_prev))) {
            report.loglik_violations.push_back(r.k);
        }
        Vec cur = log_kappas(r);
        double ratio_mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) ratio_mean += std::exp(cur[i] - prev[i]);
        ratio_mean /= static_cast<double>(n);
        if (!(ratio_mean < 1.0 + 1e-12)) {
            report.mean_ratio_violations.push_back(r.k);
        }
        prev = std::move(cur);
    }
    return report;
}

}  // namespace lexpfam
