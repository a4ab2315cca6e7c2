#include <doctest.h>

#include <cmath>

#include "lexpfam/quadrature.hpp"
#include "test_support.hpp"

using namespace lexpfam;
using namespace testsup;

namespace {

// potential shifted by a constant; everything else delegates
class ShiftedModel final : public FamilyModel {
public:
    ShiftedModel(const FamilyModel& base, double shift) : base_(base), shift_(shift) {}
    Curvature curvature() const override { return base_.curvature(); }
    int dim() const override { return base_.dim(); }
    int sample_arity() const override { return base_.sample_arity(); }
    std::string name() const override { return base_.name() + "+c"; }
    Vec statistic(const Vec& x) const override { return base_.statistic(x); }
    double potential(const NaturalParam& t) const override {
        return base_.potential(t) + shift_;
    }
    Vec potential_gradient(const NaturalParam& t) const override {
        return base_.potential_gradient(t);
    }
    DualParam dual_forward(const NaturalParam& t) const override {
        return base_.dual_forward(t);
    }
    NaturalParam dual_inverse(const DualParam& e) const override {
        return base_.dual_inverse(e);
    }
    bool in_natural_domain(const NaturalParam& t) const override {
        return base_.in_natural_domain(t);
    }
    bool in_dual_domain(const DualParam& e) const override { return base_.in_dual_domain(e); }
    bool in_support(const Vec& x) const override { return base_.in_support(x); }
    double integrate(const std::function<double(const Vec&)>& g, double tol) const override {
        return base_.integrate(g, tol);
    }

private:
    const FamilyModel& base_;
    double shift_;
};

SufficientData qg_dataset(const QGaussianModel& qg, double theta, int n, std::uint64_t seed) {
    return SufficientData::from_samples(qg, as_points(qg.sample(theta, n, seed)));
}

}  // namespace

TEST_SUITE("family") {

TEST_CASE("log density matches the quadrature normalizer at the origin") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    // C_lambda from the quadrature oracle, not the cached closed form
    auto base_pow = [&](double x) {
        return std::exp(std::log1p(1.2 * x * x) / -1.2);
    };
    quad::Options opt;
    opt.abs_tol = 1e-10;
    opt.rel_tol = 1e-10;
    const double c_quad = std::log(quad::integrate(base_pow, -INFINITY, INFINITY, opt).value);
    CHECK(log_density(qg, NaturalParam(-1.0), Vec{0.0}) ==
          doctest::Approx(-c_quad).epsilon(1e-8));
}

TEST_CASE("points outside the support have log density -inf") {
    DirichletPerturbationModel dp(0.1, 2);
    const NaturalParam theta(Vec{-2.5, -2.0});
    CHECK(log_density(dp, theta, Vec{0.5, 0.5, 0.2}) == -INFINITY);   // sums to 1.2
    CHECK(log_density(dp, theta, Vec{0.5, 0.5, 0.0}) == -INFINITY);   // boundary
    CHECK(std::isfinite(log_density(dp, theta, Vec{0.2, 0.3, 0.5})));
}

TEST_CASE("densities integrate to one") {
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
        const double lam = -1.8 * rng.uniform() - 0.05;
        QGaussianModel qg{Curvature(lam)};
        const NaturalParam theta(-std::exp(2.0 * rng.uniform() - 1.0));
        const double mass = qg.integrate(
            [&](const Vec& x) {
                const double lp = log_density(qg, theta, x);
                return std::isfinite(lp) ? std::exp(lp) : 0.0;
            },
            1e-6);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
    for (int i = 0; i < 3; ++i) {
        const double sigma = 0.05 + 0.3 * rng.uniform();
        DirichletPerturbationModel dp(sigma, 2);
        const SimplexPoint p = random_simplex(rng, 2);
        const NaturalParam theta = dp_theta_from_p(p, dp.curvature());
        const double mass = dp.integrate(
            [&](const Vec& q) {
                const double lp = log_density(dp, theta, q);
                return std::isfinite(lp) ? std::exp(lp) : 0.0;
            },
            1e-5);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
}

TEST_CASE("log likelihood basics") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto data1 = SufficientData::from_samples(qg, {Vec{0.7}});
    const NaturalParam theta(-2.0);
    CHECK(log_likelihood(qg, theta, data1) ==
          doctest::Approx(log_density(qg, theta, Vec{0.7})).epsilon(1e-15));

    // shifting phi by c lowers the likelihood by n*c
    const auto data = qg_dataset(qg, -1.0, 50, 3);
    const ShiftedModel shifted(qg, 0.37);
    CHECK(log_likelihood(shifted, theta, data) ==
          doctest::Approx(log_likelihood(qg, theta, data) - 50 * 0.37).epsilon(1e-12));
}

TEST_CASE("likelihood equals the kappa product identity") {
    Rng rng(11);
    const Curvature lam(-0.7);
    QGaussianModel qg(lam);
    const auto data = qg_dataset(qg, -0.5, 40, 17);
    for (int i = 0; i < 20; ++i) {
        const NaturalParam theta(-std::exp(2.0 * rng.uniform() - 1.0));
        const DualParam eta = qg.dual_forward(theta);
        const Vec k = kappa(qg, eta, data);
        double sum_log = 0.0;
        for (double ki : k) sum_log += std::log(ki);
        const double ll = log_likelihood(qg, theta, data);
        CHECK(sum_log / lam.value() == doctest::Approx(ll).epsilon(1e-10));
    }
}

TEST_CASE("escort weights") {
    // identical statistics give uniform weights
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto same = SufficientData::from_samples(qg, {Vec{1.5}, Vec{-1.5}, Vec{1.5}});
    const WeightVector w0 = escort_weights(qg, NaturalParam(-1.0), same);
    for (double w : w0.w) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    // hand-computed two-point case: bases (1, 0.5) -> weights (1/3, 2/3)
    const LinearMock mock(-1.0, 1);
    const auto two = SufficientData::from_samples(mock, {Vec{0.0}, Vec{0.5}});
    const WeightVector w1 = escort_weights(mock, NaturalParam(Vec{1.0}), two);
    CHECK(w1.w[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(w1.w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // lambda -> 0 at fixed theta gives uniform weights
    const LinearMock mock0(-1e-8, 1);
    const auto data = SufficientData::from_samples(
        mock0, {Vec{0.3}, Vec{-2.0}, Vec{5.0}, Vec{0.9}});
    const WeightVector w2 = escort_weights(mock0, NaturalParam(Vec{1.0}), data);
    for (double w : w2.w) CHECK(std::abs(w - 0.25) < 1e-6);

    // base hits zero -> DomainError
    CHECK_THROWS_AS(escort_weights(mock, NaturalParam(Vec{1.0}),
                                   SufficientData::from_samples(mock, {Vec{0.0}, Vec{1.0}})),
                    DomainError);
}

TEST_CASE("weight normalization over random draws") {
    Rng rng(23);
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    DirichletPerturbationModel dp(0.1, 2);
    for (int i = 0; i < 1000; ++i) {
        const auto data = qg_dataset(qg, -std::exp(rng.uniform()), 10, 100 + i);
        const WeightVector w =
            escort_weights(qg, NaturalParam(-std::exp(2.0 * rng.uniform() - 1.0)), data);
        double sum = 0.0;
        for (double wi : w.w) {
            CHECK(wi > 0.0);
            sum += wi;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
    for (int i = 0; i < 1000; ++i) {
        const SimplexPoint p = random_simplex(rng, 2);
        const auto data = SufficientData::from_samples(dp, as_points(dp.sample(p, 10, 200 + i)));
        const WeightVector w =
            escort_weights(dp, dp_theta_from_p(random_simplex(rng, 2), dp.curvature()), data);
        double sum = 0.0;
        for (double wi : w.w) {
            CHECK(wi > 0.0);
            sum += wi;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("kappa against its affine definition and the weight reconstruction") {
    Rng rng(29);
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto data = qg_dataset(qg, -1.0, 30, 7);

    for (int i = 0; i < 20; ++i) {
        const DualParam eta(std::exp(2.0 * rng.uniform() - 1.0));
        const Vec k = kappa(qg, eta, data);

        // independent affine route: kappa_i = Psi(eta) + Psi'(eta) (y_i - eta)
        const double big = qg_psi_big(eta[0], lam.value(), qg.c_lambda());
        const double grad = qg_psi_big_grad(eta[0], lam.value(), qg.c_lambda());
        for (std::size_t j = 0; j < k.size(); ++j) {
            const double affine = big + grad * (data.stats[j][0] - eta[0]);
            CHECK(k[j] == doctest::Approx(affine).epsilon(1e-10));
        }

        // Psi route agrees with exp(lambda psi)
        CHECK(big ==
              doctest::Approx(std::exp(lam.value() * dual_potential(qg, eta))).epsilon(1e-12));

        // weight reconstruction w_i = kappa_i^-1 / sum kappa_j^-1
        const WeightVector w = escort_weights(qg, qg.dual_inverse(eta), data);
        double z = 0.0;
        for (double ki : k) z += 1.0 / ki;
        for (std::size_t j = 0; j < k.size(); ++j) {
            CHECK(w.w[j] == doctest::Approx((1.0 / k[j]) / z).epsilon(1e-10));
        }
    }
}

TEST_CASE("kappa at a single-sample MLE") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto data = SufficientData::from_samples(qg, {Vec{1.3}});
    const DualParam eta(data.stats[0][0]);  // the n=1 MLE in dual coordinates
    const NaturalParam theta_hat = qg.dual_inverse(eta);
    const Vec k = kappa(qg, eta, data);
    CHECK(k[0] == doctest::Approx(std::exp(lam.value() *
                                           log_density(qg, theta_hat, data.samples[0])))
                      .epsilon(1e-12));
}

TEST_CASE("weighted kappa mean hits Psi at the next iterate") {
    // tangent identity: sum_i w_i(theta) kappa_i(T(eta)) = Psi(T(eta))
    Rng rng(31);
    const Curvature lam(-0.9);
    QGaussianModel qg(lam);
    const auto data = qg_dataset(qg, -0.7, 25, 19);
    for (int i = 0; i < 10; ++i) {
        const DualParam eta(std::exp(2.0 * rng.uniform() - 1.0));
        const NaturalParam theta = qg.dual_inverse(eta);
        const WeightVector w = escort_weights(qg, theta, data);
        Vec next(1, 0.0);
        for (std::size_t j = 0; j < data.stats.size(); ++j) next[0] += w.w[j] * data.stats[j][0];
        const DualParam eta_next(next);
        const Vec k = kappa(qg, eta_next, data);
        double mean = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j) mean += w.w[j] * k[j];
        const double psi_big = std::exp(lam.value() * dual_potential(qg, eta_next));
        CHECK(mean == doctest::Approx(psi_big).epsilon(1e-10));
    }
}

TEST_CASE("strict concavity of Psi: tangents lie above the graph") {
    // Psi is strictly concave on Xi, so every tangent plane strictly
    // dominates the graph away from its base point
    Rng rng(37);
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    for (int i = 0; i < 200; ++i) {
        const double e1 = std::exp(3.0 * rng.uniform() - 1.5);
        double e2 = std::exp(3.0 * rng.uniform() - 1.5);
        if (std::abs(e1 - e2) < 0.1) e2 += 0.2;
        const double psi1 = qg_psi_big(e1, lam.value(), qg.c_lambda());
        const double psi2 = qg_psi_big(e2, lam.value(), qg.c_lambda());
        const double grad1 = qg_psi_big_grad(e1, lam.value(), qg.c_lambda());
        CHECK(psi2 < psi1 + grad1 * (e2 - e1) - 1e-12);
        // and the library's psi agrees with the hand-derived Psi
        CHECK(std::exp(lam.value() * dual_potential(qg, DualParam(e1))) ==
              doctest::Approx(psi1).epsilon(1e-12));
    }
    DirichletPerturbationModel dp(0.1, 2);
    for (int i = 0; i < 200; ++i) {
        Vec e1{std::exp(2.0 * rng.uniform() - 1.0), std::exp(2.0 * rng.uniform() - 1.0)};
        Vec e2{std::exp(2.0 * rng.uniform() - 1.0), std::exp(2.0 * rng.uniform() - 1.0)};
        if (sup_norm_diff(e1, e2) < 0.1) e2[0] += 0.3;
        const double psi1 = dp_psi_big(e1, dp.sigma());
        const double psi2 = dp_psi_big(e2, dp.sigma());
        const Vec grad1 = dp_psi_big_grad(e1, dp.sigma());
        double affine = psi1;
        for (int j = 0; j < 2; ++j) affine += grad1[j] * (e2[j] - e1[j]);
        CHECK(psi2 < affine - 1e-12);
        CHECK(std::exp(dp.curvature().value() * dual_potential(dp, DualParam(e1))) ==
              doctest::Approx(psi1).epsilon(1e-12));
    }
}

TEST_CASE("first order residual vanishes exactly at the n=1 MLE") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto data = SufficientData::from_samples(qg, {Vec{0.8}});
    const NaturalParam theta_hat = qg.dual_inverse(DualParam(data.stats[0][0]));
    CHECK(first_order_residual(qg, theta_hat, data) < 1e-15);
    CHECK(first_order_residual(qg, NaturalParam(-5.0), data) > 1e-3);
}

TEST_CASE("escort expectation oracle matches the closed-form dual maps") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const DualParam oracle = escort_expectation(qg, NaturalParam(-1.0), 1e-7);
    CHECK(oracle[0] == doctest::Approx(1.25).epsilon(1e-4));

    // two resolutions agree
    const DualParam coarse = escort_expectation(qg, NaturalParam(-1.0), 1e-5);
    CHECK(std::abs(coarse[0] - oracle[0]) < 1e-4);

    DirichletPerturbationModel dp(0.1, 2);
    const NaturalParam theta_b = dp_theta_from_p(SimplexPoint::barycenter(2), dp.curvature());
    const DualParam od = escort_expectation(dp, theta_b, 1e-5);
    CHECK(od[0] == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(od[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("domain validation") {
    const Curvature lam(-1.2);
    QGaussianModel qg(lam);
    const auto data = SufficientData::from_samples(qg, {Vec{1.0}});
    CHECK_THROWS_AS(log_likelihood(qg, NaturalParam(0.5), data), InvalidParameter);
    CHECK_THROWS_AS(kappa(qg, DualParam(-1.0), data), InvalidParameter);
    CHECK_THROWS_AS(SufficientData::from_samples(qg, {}), EmptyData);
    DirichletPerturbationModel dp(0.1, 2);
    CHECK_THROWS_AS(SufficientData::from_samples(dp, {Vec{0.5, 0.5, 0.5}}), DomainError);
}

}  // TEST_SUITE
