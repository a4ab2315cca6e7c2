#include "lexpfam/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace lexpfam::quad {
namespace {

// 15-point Kronrod abscissae on [-1,1] (positive half) and weights, with the
// embedded 7-point Gauss weights on the odd-indexed nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One G7K15 pass over [a,b]. Non-finite integrand values poison the error
// estimate so the segment gets subdivided away from the bad point.
Segment gk15(const std::function<double(double)>& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fc = f(c);
    ++evals;
    bool bad = !std::isfinite(fc);
    if (bad) fc = 0.0;

    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double f1 = f(c - h * kXgk[j]);
        double f2 = f(c + h * kXgk[j]);
        evals += 2;
        if (!std::isfinite(f1)) { f1 = 0.0; bad = true; }
        if (!std::isfinite(f2)) { f2 = 0.0; bad = true; }
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    resk *= h;
    resg *= h;

    double err = std::abs(resk - resg);
    if (bad) err = std::numeric_limits<double>::max();
    return Segment{a, b, resk, err};
}

constexpr double kMinWidth = 1e-300;

}  // namespace

Outcome integrate_finite(const std::function<double(double)>& f, double a, double b,
                         const Options& opt) {
    Outcome out;
    if (!(a < b)) {
        out.value = 0.0;
        out.error_estimate = 0.0;
        out.converged = true;
        return out;
    }

    std::priority_queue<Segment> heap;
    long evals = 0;
    Segment s0 = gk15(f, a, b, evals);
    double total = s0.value;
    double total_err = s0.error;
    heap.push(s0);
    int segments = 1;

    auto tol = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

    while (total_err > tol() && segments < opt.max_segments) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.b - worst.a > kMinWidth) || mid <= worst.a || mid >= worst.b) {
            // cannot split further; drop its error from the budget and move on
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            if (heap.top().error == 0.0) break;
            continue;
        }
        Segment left = gk15(f, worst.a, mid, evals);
        Segment right = gk15(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++segments;
    }

    out.value = total;
    out.error_estimate = total_err;
    out.evaluations = evals;
    out.converged = total_err <= tol();
    return out;
}

Outcome integrate(const std::function<double(double)>& f, double a, double b,
                  const Options& opt) {
    const bool a_inf = std::isinf(a);
    const bool b_inf = std::isinf(b);
    if (!a_inf && !b_inf) {
        return integrate_finite(f, a, b, opt);
    }
    if (a_inf && b_inf) {
        // x = t/(1-t^2), dx = (1+t^2)/(1-t^2)^2 dt maps (-1,1) onto R
        auto g = [&f](double t) {
            const double u = 1.0 - t * t;
            const double x = t / u;
            return f(x) * (1.0 + t * t) / (u * u);
        };
        return integrate_finite(g, -1.0, 1.0, opt);
    }
    if (!a_inf && b_inf) {
        // x = a + t/(1-t), dx = dt/(1-t)^2 maps (0,1) onto (a, inf)
        auto g = [&f, a](double t) {
            const double u = 1.0 - t;
            return f(a + t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, opt);
    }
    // (-inf, b): mirror of the previous case
    auto g = [&f, b](double t) {
        const double u = 1.0 - t;
        return f(b - t / u) / (u * u);
    };
    return integrate_finite(g, 0.0, 1.0, opt);
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const Options& opt) {
    Outcome out = integrate(f, a, b, opt);
    if (!out.converged) {
        throw QuadratureFailure("quadrature did not stabilize: error estimate " +
                                std::to_string(out.error_estimate) + " after " +
                                std::to_string(out.evaluations) + " evaluations");
    }
    return out.value;
}

}  // namespace lexpfam::quad
