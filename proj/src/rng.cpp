#include "lexpfam/rng.hpp"

#include <algorithm>
#include <cmath>

namespace lexpfam {

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) {
        throw InvalidParameter("Rng::gamma: shape must be positive");
    }
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::log_gamma_draw(double shape) {
    if (!(shape > 0.0)) {
        throw InvalidParameter("Rng::log_gamma_draw: shape must be positive");
    }
    // log(G(a)) = log(G(a+1)) + log(U)/a stays finite for tiny a
    const double g = gamma(shape + 1.0);
    return std::log(g) + std::log(uniform()) / shape;
}

double Rng::student_t(double nu) {
    if (!(nu > 0.0)) {
        throw InvalidParameter("Rng::student_t: nu must be positive");
    }
    const double z = normal();
    const double chi2 = 2.0 * gamma(0.5 * nu);
    return z * std::sqrt(nu / chi2);
}

Vec Rng::dirichlet(const Vec& alpha) {
    if (alpha.empty()) {
        throw InvalidParameter("Rng::dirichlet: empty concentration vector");
    }
    const double amin = *std::min_element(alpha.begin(), alpha.end());
    if (!(amin > 0.0)) {
        throw InvalidParameter("Rng::dirichlet: concentrations must be positive");
    }

    const std::size_t m = alpha.size();
    Vec out(m);
    if (amin >= 0.1) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = gamma(alpha[i]);
            sum += out[i];
        }
        for (double& x : out) x /= sum;
    } else {
        Vec lg(m);
        double lmax = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            lg[i] = log_gamma_draw(alpha[i]);
            lmax = std::max(lmax, lg[i]);
        }
        double z = 0.0;
        for (double l : lg) z += std::exp(l - lmax);
        const double lse = lmax + std::log(z);
        for (std::size_t i = 0; i < m; ++i) out[i] = std::exp(lg[i] - lse);
    }
    for (double x : out) {
        if (!(x >= 1e-300)) {
            throw DomainError("Rng::dirichlet: component underflowed below 1e-300");
        }
    }
    return out;
}

}  // namespace lexpfam
