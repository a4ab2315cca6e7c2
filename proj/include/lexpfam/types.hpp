#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lexpfam {

using Vec = std::vector<double>;

// Error taxonomy. Everything derives from std::runtime_error; the CLI maps
// these onto its exit codes.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoFeasiblePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InitializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyData : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The curvature constant lambda, restricted to lambda < 0.
class Curvature {
public:
    explicit Curvature(double lambda) : lambda_(lambda) {
        if (!std::isfinite(lambda) || lambda >= 0.0) {
            throw InvalidParameter("Curvature: lambda must be finite and strictly negative, got " +
                                   std::to_string(lambda));
        }
    }
    [[nodiscard]] double value() const noexcept { return lambda_; }

private:
    double lambda_;
};

namespace detail {
inline void require_finite(const Vec& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw InvalidParameter(std::string(what) + ": all components must be finite");
        }
    }
}
}  // namespace detail

/// A point of the natural parameter space. Finiteness is enforced here;
/// membership in a concrete family's domain is the family's responsibility.
class NaturalParam {
public:
    explicit NaturalParam(Vec theta) : theta_(std::move(theta)) {
        detail::require_finite(theta_, "NaturalParam");
    }
    explicit NaturalParam(double theta) : NaturalParam(Vec{theta}) {}

    [[nodiscard]] const Vec& coords() const noexcept { return theta_; }
    [[nodiscard]] std::size_t size() const noexcept { return theta_.size(); }
    double operator[](std::size_t i) const { return theta_[i]; }

private:
    Vec theta_;
};

/// A point of the dual parameter space.
class DualParam {
public:
    explicit DualParam(Vec eta) : eta_(std::move(eta)) {
        detail::require_finite(eta_, "DualParam");
    }
    explicit DualParam(double eta) : DualParam(Vec{eta}) {}

    [[nodiscard]] const Vec& coords() const noexcept { return eta_; }
    [[nodiscard]] std::size_t size() const noexcept { return eta_.size(); }
    double operator[](std::size_t i) const { return eta_[i]; }

private:
    Vec eta_;
};

inline double dot(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("dot: lengths " + std::to_string(u.size()) + " and " +
                                std::to_string(v.size()) + " differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline double sup_norm_diff(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("sup_norm_diff: lengths differ");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

}  // namespace lexpfam
