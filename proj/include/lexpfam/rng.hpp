#pragma once

#include <cstdint>
#include <random>

#include "lexpfam/types.hpp"

namespace lexpfam {

// Seeded generator with self-contained sampling algorithms. std::
// distributions are implementation-defined, so everything downstream of a
// seed is produced here to keep outputs reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in the open interval (0, 1).
    double uniform() {
        for (;;) {
            const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
            if (u > 0.0 && u < 1.0) return u;
        }
    }

    /// Standard normal via Box-Muller (two uniforms per call, no caching).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Gamma(shape, scale=1), Marsaglia-Tsang; shape < 1 uses the boost
    /// G(a) = G(a+1) * U^(1/a).
    double gamma(double shape);

    /// log of a Gamma(shape, scale=1) draw, computed without underflow.
    /// Intended for small shape where the draw itself would round to zero.
    double log_gamma_draw(double shape);

    /// Student-t with nu > 0 degrees of freedom.
    double student_t(double nu);

    /// Dirichlet draw with the given concentration vector. Components below
    /// 1e-300 raise DomainError rather than silently underflowing; shapes
    /// below 0.1 are handled through the log-gamma representation.
    Vec dirichlet(const Vec& alpha);

private:
    std::mt19937_64 gen_;
};

}  // namespace lexpfam
