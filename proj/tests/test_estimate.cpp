#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "gidar/ar.hpp"
#include "gidar/errors.hpp"
#include "gidar/estimate.hpp"

using namespace gidar;

TEST_SUITE("estimate") {
    TEST_CASE("least-squares slope") {
        // Pairs (1,2), (2,4), (4,3): lag mean 7/3.
        const std::vector<double> y{1.0, 2.0, 4.0, 3.0};
        const double lag_mean = 7.0 / 3.0;
        const double den = (1 - lag_mean) * (1 - lag_mean) + (2 - lag_mean) * (2 - lag_mean) + (4 - lag_mean) * (4 - lag_mean);
        CHECK(cls_theta(y) == doctest::Approx((2.0 + 8.0 + 12.0 - 3.0 * lag_mean * lag_mean) / den));
        const double cur_mean = 3.0;
        const double num = (1 - lag_mean) * (2 - cur_mean) + (2 - lag_mean) * (4 - cur_mean) + (4 - lag_mean) * (3 - cur_mean);
        CHECK(cls_theta(y, true) == doctest::Approx(num / den));
        CHECK_THROWS_AS(cls_theta({1.0, 1.0, 1.0, 5.0}), DegenerateError);
        CHECK_THROWS_AS(cls_theta({1.0, 2.0}), DomainError);
    }

    TEST_CASE("slope matches a grid search of the squared residuals") {
        std::mt19937_64 rng(7);
        std::exponential_distribution<double> e(1.0);
        std::uniform_real_distribution<double> u(0.0, 0.9);
        for (int k = 0; k < 10; ++k) {
            const double theta = u(rng);
            std::vector<double> y{e(rng)};
            for (int t = 1; t < 300; ++t) y.push_back(theta * y.back() + e(rng));
            CHECK(std::abs(cls_theta(y, true) - oracle::grid_cls(y)) <= 1e-4);
        }
    }

    TEST_CASE("residual moments") {
        const std::vector<double> y{1.0, 2.0, 4.0};
        const auto r = residual_moments(y, 0.5);
        CHECK(r.m1 == doctest::Approx((1.5 + 3.0) / 2));
        CHECK(r.m2 == doctest::Approx((2.25 + 9.0) / 2));
        CHECK_THROWS_AS(residual_moments(y, 1.0), DomainError);
    }

    TEST_CASE("closed-form estimators invert the innovation moments") {
        for (double theta : {0.0, 0.3, 0.7}) {
            for (auto [a, b] : {std::pair{2.0, 1.0}, {10.0, 5.0}, {0.5, 3.0}}) {
                const auto m = ratio_moments(theta, LaplaceExponent::gamma(a, b));
                const auto est = mom_gamma(m.m1, m.m2, theta);
                CHECK(est.param1 == doctest::Approx(b).epsilon(1e-10));
                CHECK(est.param2 == doctest::Approx(a).epsilon(1e-10));
                CHECK(est.in_domain);
            }
            for (auto [d, g] : {std::pair{2.0, 1.0}, {0.5, 1.0}, {3.0, 0.2}}) {
                const auto m = ratio_moments(theta, LaplaceExponent::inverse_gaussian(d, g));
                const auto est = mom_inverse_gaussian(m.m1, m.m2, theta);
                CHECK(est.param1 == doctest::Approx(g).epsilon(1e-10));
                CHECK(est.param2 == doctest::Approx(d).epsilon(1e-10));
            }
        }
    }

    TEST_CASE("tempered-stable estimator reproduces the moments it was given") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> lam(0.2, 5.0), bet(0.1, 0.9), th(0.0, 0.8);
        for (int k = 0; k < 10; ++k) {
            const double l = lam(rng), b = bet(rng), t = th(rng);
            CAPTURE(l);
            CAPTURE(b);
            CAPTURE(t);
            const auto m = ratio_moments(t, LaplaceExponent::tempered_stable(l, b));
            const auto est = mom_tempered_stable(m.m1, m.m2, t);
            const auto back = ratio_moments(t, LaplaceExponent::tempered_stable(est.param1, est.param2));
            CHECK(back.m1 == doctest::Approx(m.m1).epsilon(1e-6));
            CHECK(back.m2 == doctest::Approx(m.m2).epsilon(1e-6));
            CHECK(est.solver.converged);
        }
        const auto m = ratio_moments(0.3, LaplaceExponent::tempered_stable(1.0, 0.6));
        const auto est = mom_tempered_stable(m.m1, m.m2, 0.3);
        CHECK(est.param1 == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(est.param2 == doctest::Approx(0.6).epsilon(1e-6));
    }

    TEST_CASE("estimator failure modes") {
        // Zero spread: k = 0, so h never changes sign.
        const double theta = 0.3, m1 = 0.5;
        const double m2 = 2 * m1 * m1 / (1 - theta);
        CHECK_THROWS_AS(mom_tempered_stable(m1, m2, theta), RootError);
        CHECK_THROWS_AS(mom_gamma(m1, m2, theta), DegenerateError);
        CHECK_THROWS_AS(mom_inverse_gaussian(m1, 0.5 * m2, theta), DomainError);
        CHECK_FALSE(mom_gamma(m1, 0.5 * m2, theta).in_domain);
        CHECK_THROWS_AS(mom_gamma(m1, m2, 1.0), DomainError);
        CHECK_THROWS_AS(mom(Family::Mixture, m1, m2, theta), UnsupportedFamilyError);
        CHECK(mom_parameter_names(Family::Gamma) == std::pair<std::string, std::string>{"beta", "alpha"});
    }

    TEST_CASE("end to end on a simulated series") {
        ArSpec spec{Linear1{0.3}, LaplaceExponent::tempered_stable(1.0, 0.6)};
        spec.length = 50000;
        spec.seed = 21;
        const auto y = simulate(spec);
        const auto r = estimate(y, Family::TemperedStable);
        CHECK(r.n == y.size());
        CHECK(r.theta_hat == doctest::Approx(0.3).epsilon(0.1));
        CHECK(r.family_params.at("lambda") > 0.0);
        CHECK(r.family_params.at("beta") == doctest::Approx(0.6).epsilon(0.2));
    }

    TEST_CASE("summaries") {
        const auto s = summarize("x", {4.0, 1.0, 3.0, 2.0});
        CHECK(s.mean == doctest::Approx(2.5));
        CHECK(s.median == doctest::Approx(2.5));
        CHECK(s.q1 == doctest::Approx(1.75));
        CHECK(s.q3 == doctest::Approx(3.25));
        CHECK(s.count == 4);
        CHECK(std::isnan(summarize("x", {}).mean));
    }

    TEST_CASE("study is reproducible and independent of the execution policy") {
        StudyConfig c;
        c.base = LaplaceExponent::tempered_stable(1.0, 0.6);
        c.replicates = 6;
        c.length = 400;
        c.burn_in = 200;
        c.seed = 5;
        const auto a = run_study(c, ExecutionPolicy::Serial);
        const auto b = run_study(c, ExecutionPolicy::Parallel);
        REQUIRE(a.replicates.size() == 6);
        for (std::size_t i = 0; i < 6; ++i) {
            CHECK(a.replicates[i].theta_hat == b.replicates[i].theta_hat);
            CHECK(a.replicates[i].param1_hat == b.replicates[i].param1_hat);
            CHECK(a.replicates[i].param2_hat == b.replicates[i].param2_hat);
        }
        CHECK(a.theta.mean == b.theta.mean);
        CHECK_FALSE(a.surrogate_innovations);
        c.base = LaplaceExponent::gamma(2.0, 1.0);
        CHECK_THROWS_AS(run_study(c), InvalidLawError);
        c.allow_invalid = true;
        CHECK(run_study(c).surrogate_innovations);
    }
}
