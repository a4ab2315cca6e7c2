#pragma once

#include <optional>
#include <string>

#include "lexpfam/family.hpp"

namespace lexpfam {

enum class Termination {
    step_converged,
    residual_converged,
    max_iter,
    monotonicity_violation,
};

[[nodiscard]] std::string to_string(Termination t);
[[nodiscard]] Termination termination_from_string(const std::string& s);

struct SolverConfig {
    double tol_step = 1e-12;           // sup-norm threshold on eta(k+1) - eta(k)
    double tol_residual = 1e-10;       // first-order residual threshold
    int max_iter = 500;
    double monotonicity_slack = 1e-9;  // permitted drop, relative: slack * (1 + |l|)
    bool keep_trace = true;
    // initialization: explicit theta(0) or eta(0); neither set = sample-mean rule
    std::optional<NaturalParam> init_theta;
    std::optional<DualParam> init_eta;
};

struct TraceRecord {
    int k = 0;
    DualParam eta;
    NaturalParam theta;
    double loglik = 0.0;
    double step_norm = 0.0;  // ||eta(k) - eta(k-1)||_inf, zero at k = 0
    WeightVector weights;
};

struct SolverTrace {
    double lambda = 0.0;
    std::vector<TraceRecord> records;
    Termination termination = Termination::max_iter;
};

struct FitResult {
    NaturalParam theta_hat;
    DualParam eta_hat;
    double loglik = 0.0;
    int iterations = 0;  // number of fixed-point map applications
    double first_order_residual = 0.0;
    Termination termination = Termination::max_iter;
    SolverTrace trace;
};

/// One application of the dual-space dynamical system
///   T(eta) = sum_i w_i(dual_inverse(eta)) y_i.
/// The result is a convex combination of the statistic rows.
DualParam step(const FamilyModel& model, const DualParam& eta, const SufficientData& data);

/// eta(0) = mean of the statistic rows. Throws InvalidParameter if the mean
/// falls outside the dual domain.
DualParam sample_mean_init(const FamilyModel& model, const SufficientData& data);

/// Run the fixed-point iteration until a stopping rule fires. The trace
/// carries one record per visited eta including the final point; the log
/// likelihood is guaranteed nondecreasing up to the configured slack, and a
/// violation aborts with the best iterate seen.
FitResult solve(const FamilyModel& model, const SufficientData& data,
                const SolverConfig& config = {});

struct AuditReport {
    std::vector<int> loglik_violations;      // record index where l dropped beyond slack
    std::vector<int> mean_ratio_violations;  // record index where (1/n) sum kappa-ratio >= 1+1e-12
    [[nodiscard]] bool clean() const {
        return loglik_violations.empty() && mean_ratio_violations.empty();
    }
};

/// Scan a trace for monotonicity violations. kappa ratios are reconstructed
/// from the stored weights and log likelihoods alone:
///   log Z_k = (-lambda l_k - sum_i log w_i(k)) / n,
///   log kappa_i(k) = -log Z_k - log w_i(k).
/// Traces with fewer than two records are vacuously clean.
AuditReport monotonicity_audit(const SolverTrace& trace, double slack);

}  // namespace lexpfam
