#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lexpfam/solver.hpp"
#include "test_support.hpp"

using namespace lexpfam;
using namespace testsup;

TEST_SUITE("dirichlet") {

TEST_CASE("simplex point validation") {
    CHECK_NOTHROW(SimplexPoint(Vec{0.1, 0.4, 0.5}));
    CHECK_THROWS_AS(SimplexPoint(Vec{0.5, 0.5, 0.1}), InvalidParameter);    // sums to 1.1
    CHECK_THROWS_AS(SimplexPoint(Vec{0.5, 0.5, 0.0}), InvalidParameter);    // boundary
    CHECK_THROWS_AS(SimplexPoint(Vec{1.2, -0.2, 0.0}), InvalidParameter);   // outside (0,1)
    CHECK_THROWS_AS(SimplexPoint(Vec{0.9}), InvalidParameter);              // too short
    const SimplexPoint u = SimplexPoint::barycenter(2);
    CHECK(u[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("perturbation examples") {
    const SimplexPoint p(Vec{0.5, 0.25, 0.25});
    const SimplexPoint q(Vec{0.25, 0.25, 0.5});
    const SimplexPoint r = perturb(p, q);
    CHECK(r[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(r[2] == doctest::Approx(0.4).epsilon(1e-14));

    // the barycenter is the identity
    const SimplexPoint u = SimplexPoint::barycenter(2);
    const SimplexPoint pu = perturb(p, u);
    for (int j = 0; j < 3; ++j) CHECK(pu[j] == doctest::Approx(p[j]).epsilon(1e-14));

    CHECK_THROWS_AS(perturb(p, SimplexPoint(Vec{0.5, 0.5})), DimensionMismatch);
}

TEST_CASE("difference examples") {
    const SimplexPoint p(Vec{0.1, 0.4, 0.5});
    const SimplexPoint self = difference(p, p);
    for (int j = 0; j < 3; ++j) CHECK(self[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // dividing by the uniform renormalizes to itself
    const SimplexPoint a(Vec{0.8, 0.2});
    const SimplexPoint b(Vec{0.5, 0.5});
    const SimplexPoint d = difference(a, b);
    CHECK(d[0] == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(d[1] == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("group laws hold on random triples") {
    Rng rng(17);
    const SimplexPoint u = SimplexPoint::barycenter(2);
    for (int i = 0; i < 1000; ++i) {
        const SimplexPoint p = random_simplex(rng, 2);
        const SimplexPoint q = random_simplex(rng, 2);
        const SimplexPoint r = random_simplex(rng, 2);

        // commutativity and associativity
        const SimplexPoint pq = perturb(p, q);
        const SimplexPoint qp = perturb(q, p);
        const SimplexPoint pq_r = perturb(pq, r);
        const SimplexPoint p_qr = perturb(p, perturb(q, r));
        CHECK(sup_norm_diff(pq.coords(), qp.coords()) <= 1e-12);
        CHECK(sup_norm_diff(pq_r.coords(), p_qr.coords()) <= 1e-12);

        // inverse: (p + q) - q = p, p - p = u, and p + (u - p) = u
        const SimplexPoint back = difference(pq, q);
        CHECK(sup_norm_diff(back.coords(), p.coords()) <= 1e-12);
        CHECK(sup_norm_diff(difference(p, p).coords(), u.coords()) <= 1e-12);
        CHECK(sup_norm_diff(perturb(p, difference(u, p)).coords(), u.coords()) <= 1e-12);
    }
}

TEST_CASE("natural parameter map") {
    const Curvature lam(-0.1);
    const NaturalParam tb = dp_theta_from_p(SimplexPoint::barycenter(2), lam);
    CHECK(tb[0] == doctest::Approx(-10.0).epsilon(1e-14));
    CHECK(tb[1] == doctest::Approx(-10.0).epsilon(1e-14));

    const NaturalParam t = dp_theta_from_p(SimplexPoint(Vec{0.1, 0.4, 0.5}), lam);
    CHECK(t[0] == doctest::Approx(-2.5).epsilon(1e-14));
    CHECK(t[1] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(t[0] < 0.0);
    CHECK(t[1] < 0.0);
}

TEST_CASE("eta to p and back") {
    const DualParam e1(Vec{1.0, 1.0});
    const SimplexPoint p1 = dp_p_from_eta(e1);
    for (int j = 0; j < 3; ++j) CHECK(p1[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const SimplexPoint p2 = dp_p_from_eta(DualParam(Vec{4.0, 5.0}));
    CHECK(p2[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(p2[1] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(p2[2] == doctest::Approx(0.5).epsilon(1e-14));

    CHECK_THROWS_AS(dp_p_from_eta(DualParam(Vec{1.0, -1.0})), InvalidParameter);

    // F and the eta-to-p map invert each other
    DirichletPerturbationModel dp(0.1, 2);
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        const SimplexPoint q = random_simplex(rng, 2);
        const SimplexPoint back = dp_p_from_eta(DualParam(dp.statistic(q.coords())));
        CHECK(sup_norm_diff(back.coords(), q.coords()) <= 1e-12);

        // round trip p -> theta -> eta -> p
        const NaturalParam th = dp_theta_from_p(q, dp.curvature());
        const SimplexPoint back2 = dp_p_from_eta(dp.dual_forward(th));
        CHECK(sup_norm_diff(back2.coords(), q.coords()) <= 1e-12);
    }
}

TEST_CASE("dual parameter is independent of sigma") {
    Rng rng(19);
    for (int i = 0; i < 50; ++i) {
        const SimplexPoint p = random_simplex(rng, 2);
        Vec want{p[1] / p[0], p[2] / p[0]};
        Vec etas[3];
        int idx = 0;
        for (double lam : {-0.05, -0.1, -0.5}) {
            DirichletPerturbationModel m(-lam, 2);
            etas[idx++] = m.dual_forward(dp_theta_from_p(p, m.curvature())).coords();
        }
        CHECK(sup_norm_diff(etas[0], want) <= 1e-12);
        CHECK(sup_norm_diff(etas[0], etas[1]) <= 1e-12);
        CHECK(sup_norm_diff(etas[1], etas[2]) <= 1e-12);
    }
}

TEST_CASE("simplex update") {
    const SimplexPoint p(Vec{0.2, 0.3, 0.5});
    const SimplexPoint q(Vec{0.6, 0.1, 0.3});

    // n = 1 jumps to the sample in one step
    const SimplexPoint one = dp_simplex_update(p, {q});
    CHECK(sup_norm_diff(one.coords(), q.coords()) <= 1e-15);

    // data identical to the current point leaves it fixed
    const SimplexPoint fixed = dp_simplex_update(p, {p, p, p});
    CHECK(sup_norm_diff(fixed.coords(), p.coords()) <= 1e-15);

    CHECK_THROWS_AS(dp_simplex_update(p, {}), EmptyData);
}

TEST_CASE("simplex update tracks the generic dual-space iteration") {
    DirichletPerturbationModel dp(0.1, 2);
    const SimplexPoint pstar(Vec{0.1, 0.4, 0.5});
    const auto qs = dp.sample(pstar, 20, 42);
    const auto data = SufficientData::from_samples(dp, as_points(qs));

    SimplexPoint p = SimplexPoint::barycenter(2);
    DualParam eta(Vec{1.0, 1.0});
    for (int k = 0; k < 20; ++k) {
        p = dp_simplex_update(p, qs);
        eta = step(dp, eta, data);
        CHECK(sup_norm_diff(p.coords(), dp_p_from_eta(eta).coords()) <= 1e-12);
    }
}

TEST_CASE("the update never reads lambda") {
    DirichletPerturbationModel base(0.1, 2);
    const SimplexPoint pstar(Vec{0.25, 0.35, 0.4});
    const auto qs = base.sample(pstar, 30, 5);

    DualParam e1(Vec{1.0, 1.0}), e2(Vec{1.0, 1.0}), e3(Vec{1.0, 1.0});
    DirichletPerturbationModel m1(0.05, 2), m2(0.1, 2), m3(0.5, 2);
    const auto d1 = SufficientData::from_samples(m1, as_points(qs));
    const auto d2 = SufficientData::from_samples(m2, as_points(qs));
    const auto d3 = SufficientData::from_samples(m3, as_points(qs));
    for (int k = 0; k < 20; ++k) {
        e1 = step(m1, e1, d1);
        e2 = step(m2, e2, d2);
        e3 = step(m3, e3, d3);
        CHECK(sup_norm_diff(e1.coords(), e2.coords()) <= 1e-12);
        CHECK(sup_norm_diff(e2.coords(), e3.coords()) <= 1e-12);
    }
}

TEST_CASE("support and density base") {
    DirichletPerturbationModel dp(0.1, 2);
    Rng rng(23);
    const NaturalParam th = dp_theta_from_p(SimplexPoint(Vec{0.1, 0.4, 0.5}), dp.curvature());
    for (int i = 0; i < 100; ++i) {
        const SimplexPoint q = random_simplex(rng, 2);
        const Vec y = dp.statistic(q.coords());
        CHECK(y[0] > 0.0);
        CHECK(y[1] > 0.0);
        const double base = 1.0 + dp.curvature().value() * dot(th.coords(), y);
        CHECK(base > 1.0);
        CHECK(std::isfinite(log_density(dp, th, q.coords())));
    }
}

TEST_CASE("sampler determinism and concentration in sigma") {
    const SimplexPoint p(Vec{0.1, 0.4, 0.5});
    const auto a = dp_sample(p, 0.1, 500, 3);
    const auto b = dp_sample(p, 0.1, 500, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(sup_norm_diff(a[i].coords(), b[i].coords()) == 0.0);
    }

    // median Aitchison distance to p shrinks as sigma drops
    double medians[3];
    int idx = 0;
    for (double sigma : {1e-1, 1e-2, 1e-3}) {
        const auto qs = dp_sample(p, sigma, 10000, 7);
        std::vector<double> dist;
        dist.reserve(qs.size());
        for (const auto& q : qs) dist.push_back(aitchison_distance(q.coords(), p.coords()));
        std::nth_element(dist.begin(), dist.begin() + dist.size() / 2, dist.end());
        medians[idx++] = dist[dist.size() / 2];
    }
    CHECK(medians[0] > medians[1]);
    CHECK(medians[1] > medians[2]);

    CHECK_THROWS_AS(dp_sample(p, -0.1, 10, 1), InvalidParameter);
    CHECK_THROWS_AS(dp_sample(p, 0.1, 0, 1), InvalidParameter);
}

TEST_CASE("sampling at the barycenter reduces to a pure dirichlet") {
    const int d = 2;
    const double sigma = 0.1;
    const int n = 10000;
    const auto qs = dp_sample(SimplexPoint::barycenter(d), sigma, n, 11);
    // per-coordinate mean must sit within 3 standard errors of 1/(1+d)
    const double alpha = 1.0 / (sigma * (d + 1));
    const double alpha0 = alpha * (d + 1);
    const double var = alpha * (alpha0 - alpha) / (alpha0 * alpha0 * (alpha0 + 1.0));
    const double se = std::sqrt(var / n);
    for (int j = 0; j <= d; ++j) {
        double mean = 0.0;
        for (const auto& q : qs) mean += q[static_cast<std::size_t>(j)];
        mean /= n;
        CHECK(std::abs(mean - 1.0 / (d + 1)) < 3.0 * se);
    }
}

TEST_CASE("model construction guards") {
    CHECK_THROWS_AS(DirichletPerturbationModel(0.0, 2), InvalidParameter);
    CHECK_THROWS_AS(DirichletPerturbationModel(-1.0, 2), InvalidParameter);
    CHECK_THROWS_AS(DirichletPerturbationModel(0.1, 0), InvalidParameter);
}

}  // TEST_SUITE
