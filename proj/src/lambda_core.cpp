#include "lexpfam/lambda_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lexpfam {

double pairing(const Vec& u, const Vec& v, Curvature lam) {
    const double s = dot(u, v);
    const double t = lam.value() * s;
    if (!(1.0 + t > 0.0)) {
        throw DomainError("pairing: 1 + lambda*u.v = " + std::to_string(1.0 + t) +
                          " is outside the domain");
    }
    // log1p keeps precision when lambda*u.v is close to zero
    return std::log1p(t) / lam.value();
}

DualParam lambda_gradient(const Vec& grad, const NaturalParam& theta, Curvature lam) {
    const double denom = 1.0 - lam.value() * dot(grad, theta.coords());
    if (!(denom > 0.0)) {
        throw DomainError("lambda_gradient: denominator 1 - lambda*grad.theta = " +
                          std::to_string(denom) + " is not positive");
    }
    Vec eta(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) eta[i] = grad[i] / denom;
    return DualParam(std::move(eta));
}

double fenchel_young_residual(const NaturalParam& theta, const DualParam& eta,
                              double phi_val, double psi_val, Curvature lam) {
    return phi_val + psi_val - pairing(theta.coords(), eta.coords(), lam);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double conjugate_objective(const std::function<double(const Vec&)>& f, const Vec& y,
                           double lambda, const Vec& t) {
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * y[i];
    const double base = 1.0 + lambda * s;
    if (!(base > 0.0)) return kNegInf;
    const double val = std::log1p(lambda * s) / lambda - f(t);
    return std::isfinite(val) ? val : kNegInf;
}

}  // namespace

double numeric_conjugate(const std::function<double(const Vec&)>& f, const Vec& y,
                         Curvature lam, const Box& box, int grid_points, Vec* maximizer) {
    const std::size_t d = y.size();
    if (box.lo.size() != d || box.hi.size() != d) {
        throw DimensionMismatch("numeric_conjugate: box dimension does not match y");
    }
    if (grid_points < 2) {
        throw InvalidParameter("numeric_conjugate: need at least 2 grid points per axis");
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (!(box.lo[i] <= box.hi[i])) {
            throw InvalidParameter("numeric_conjugate: empty search box");
        }
    }
    const double lambda = lam.value();

    // stage 1: uniform grid scan
    Vec cell(d);
    for (std::size_t i = 0; i < d; ++i) cell[i] = (box.hi[i] - box.lo[i]) / (grid_points - 1);

    std::vector<int> idx(d, 0);
    Vec t(d);
    double best = kNegInf;
    Vec best_t = box.lo;
    for (;;) {
        for (std::size_t i = 0; i < d; ++i) t[i] = box.lo[i] + idx[i] * cell[i];
        const double val = conjugate_objective(f, y, lambda, t);
        if (val > best) {
            best = val;
            best_t = t;
        }
        std::size_t i = 0;
        while (i < d && ++idx[i] == grid_points) {
            idx[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    if (best == kNegInf) {
        throw NoFeasiblePoint("numeric_conjugate: pairing domain does not meet the search box");
    }

    // stage 2: golden-section polish, one coordinate at a time, confined to
    // the grid cells adjacent to the incumbent
    const double gold = 0.5 * (std::sqrt(5.0) - 1.0);
    Vec cur = best_t;
    for (int sweep = 0; sweep < 3; ++sweep) {
        for (std::size_t j = 0; j < d; ++j) {
            double lo = std::max(box.lo[j], cur[j] - cell[j]);
            double hi = std::min(box.hi[j], cur[j] + cell[j]);
            if (!(hi > lo)) continue;
            auto eval = [&](double x) {
                Vec p = cur;
                p[j] = x;
                return conjugate_objective(f, y, lambda, p);
            };
            double x1 = hi - gold * (hi - lo);
            double x2 = lo + gold * (hi - lo);
            double f1 = eval(x1);
            double f2 = eval(x2);
            for (int it = 0; it < 160 && hi - lo > 0.0; ++it) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gold * (hi - lo);
                    f2 = eval(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gold * (hi - lo);
                    f1 = eval(x1);
                }
            }
            const double xbest = (f1 > f2) ? x1 : x2;
            const double fbest = std::max(f1, f2);
            if (fbest > best) {
                best = fbest;
                cur[j] = xbest;
                best_t = cur;
            }
        }
    }

    if (maximizer) *maximizer = best_t;
    return best;
}

}  // namespace lexpfam
