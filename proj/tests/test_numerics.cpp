#include <cmath>
#include <numbers>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "gidar/errors.hpp"
#include "gidar/gid.hpp"
#include "gidar/laplace_inversion.hpp"
#include "gidar/quadrature.hpp"
#include "gidar/rng.hpp"
#include "gidar/roots.hpp"

using namespace gidar;
using numerics::Complex;

namespace {

double ml_half(double x) {
    if (x < 200.0) return 1.0 / std::sqrt(std::numbers::pi * x) - std::exp(x) * std::erfc(std::sqrt(x));
    // Asymptotic series of e^x erfc(sqrt x), where the direct form overflows.
    double term = 1.0, sum = 0.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -(2.0 * k - 1.0) / (2.0 * x);
        sum -= term;
    }
    return sum / std::sqrt(std::numbers::pi * x);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("numerics") {
    TEST_CASE("fixed Talbot inverts textbook pairs") {
        const std::vector<double> xs{0.1, 1.0, 5.0, 10.0};
        for (double x : xs) {
            CHECK(rel(numerics::invert_laplace([](Complex s) { return 1.0 / (s + 1.0); }, x).value, std::exp(-x)) < 1e-7);
            CHECK(rel(numerics::invert_laplace([](Complex s) { return 1.0 / s; }, x).value, 1.0) < 1e-10);
            CHECK(rel(numerics::invert_laplace([](Complex s) { return 1.0 / (1.0 + std::sqrt(s)); }, x).value,
                      ml_half(x)) < 1e-7);
        }
        CHECK(numerics::invert_laplace([](Complex s) { return 1.0 / (s + 1.0); }, 1.0).value ==
              doctest::Approx(0.3678794411714).epsilon(1e-10));
        CHECK(ml_half(1.0) == doctest::Approx(0.136606).epsilon(1e-5));
    }

    TEST_CASE("the closed-form pair agrees with forward quadrature") {
        for (double s : {0.5, 1.0, 3.0}) {
            const double fwd = oracle::forward_laplace(ml_half, s, 8.0);
            CHECK(rel(fwd, 1.0 / (1.0 + std::sqrt(s))) < 1e-8);
        }
    }

    TEST_CASE("Talbot and Gaver-Stehfest agree on smooth pairs") {
        struct Pair {
            numerics::ComplexTransform F;
            std::function<double(double)> Fr;
        };
        const std::vector<Pair> pairs{
            {[](Complex s) { return 1.0 / (s + 1.0); }, [](double s) { return 1.0 / (s + 1.0); }},
            {[](Complex s) { return 1.0 / ((s + 2.0) * (s + 2.0)); }, [](double s) { return 1.0 / ((s + 2) * (s + 2)); }},
            {[](Complex s) { return 1.0 / ((s + 1.0) * (s + 3.0)); }, [](double s) { return 1.0 / ((s + 1) * (s + 3)); }},
        };
        for (const auto& p : pairs) {
            for (double x : {0.5, 1.0, 2.0}) {
                const double t = numerics::invert_laplace(p.F, x).value;
                const double g = oracle::gaver_stehfest(p.Fr, x);
                CHECK(std::abs(t - g) <= 2e-4 * std::max(1.0, std::abs(t)));
            }
        }
    }

    TEST_CASE("shifted contour keeps relative accuracy in the far tail") {
        numerics::InversionOptions opt;
        opt.shift = -3.0;
        for (double x : {10.0, 30.0}) {
            const double v = numerics::invert_laplace([](Complex s) { return 1.0 / (s + 3.0); }, x, opt).value;
            CHECK(rel(v, std::exp(-3.0 * x)) < 1e-9);
        }
    }

    TEST_CASE("inversion reports an error estimate and checks its arguments") {
        const auto r = numerics::invert_laplace([](Complex s) { return 1.0 / (s + 1.0); }, 1.0);
        CHECK(r.error_estimate >= 0.0);
        CHECK(r.error_estimate < 1e-8);
        CHECK(r.nodes_used == 24 + 18);
        CHECK_THROWS_AS(numerics::invert_laplace([](Complex s) { return 1.0 / s; }, 0.0), DomainError);
        CHECK_THROWS_AS(numerics::invert_laplace([](Complex s) { return 1.0 / s; }, -1.0), DomainError);
        CHECK_THROWS_AS(numerics::invert_laplace([](Complex) { return Complex(std::nan(""), 0.0); }, 1.0),
                        InversionError);
        numerics::InversionOptions strict;
        strict.nodes = 4;
        strict.enforce_tolerance = true;
        strict.rel_tol = 1e-12;
        strict.abs_tol = 0.0;
        CHECK_THROWS_AS(
            numerics::invert_laplace([](Complex s) { return 1.0 / (1.0 + std::sqrt(s)); }, 1.0, strict),
            InversionError);
    }

    TEST_CASE("semi-infinite quadrature") {
        CHECK(numerics::quad_semi_infinite([](double y) { return std::exp(-y); }, 1e-12) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(numerics::quad_semi_infinite([](double y) { return std::exp(-y) * std::sqrt(y); }, 1e-12) ==
              doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-9));
        for (int k = 0; k <= 5; ++k) {
            const double v = numerics::quad_semi_infinite([k](double y) { return std::pow(y, k) * std::exp(-y); }, 1e-12);
            CHECK(v == doctest::Approx(std::tgamma(k + 1.0)).epsilon(1e-10));
        }
        // Branch-cut integrand of the lambda = 0, beta = 1/2 case at x = 1.
        const double v = numerics::quad_semi_infinite(
            [](double y) { return std::exp(-y) * std::sqrt(y) / (1.0 + y); }, 1e-12);
        CHECK(v == doctest::Approx(std::numbers::pi * ml_half(1.0)).epsilon(1e-10));
        CHECK(v == doctest::Approx(std::numbers::pi * 0.136606).epsilon(1e-5));
    }

    TEST_CASE("quadrature handles endpoint singularities and reports failure") {
        const auto r = numerics::integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
        CHECK(r.converged);
        CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
        const auto bad = numerics::integrate_interval([](double x) { return std::sin(1.0 / x) / x; }, 0.0, 1.0,
                                                      1e-14, 0.0, 20);
        CHECK_FALSE(bad.converged);
        CHECK_THROWS_AS(numerics::quad_semi_infinite([](double y) { return 1.0 / (1e-300 + y); }, 1e-12),
                        QuadratureError);
    }

    TEST_CASE("bracketed root finding") {
        CHECK(numerics::find_root([](double x) { return x - 2.0; }, 0.0, 5.0, 1e-12).root ==
              doctest::Approx(2.0).epsilon(1e-12));
        const auto r = numerics::find_root([](double x) { return std::exp(x) - 10.0; }, 0.0, 10.0, 1e-13);
        CHECK(r.converged);
        CHECK(r.root == doctest::Approx(std::log(10.0)).epsilon(1e-12));
        CHECK_THROWS_AS(numerics::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-10), RootError);
        // A flat-then-steep target where plain regula falsi stalls.
        const auto s = numerics::find_root([](double x) { return std::pow(x, 9) - 1e-3; }, 0.0, 4.0, 1e-14);
        CHECK(s.converged);
        CHECK(s.root == doctest::Approx(std::pow(1e-3, 1.0 / 9)).epsilon(1e-12));
    }

    TEST_CASE("median of the geometric gamma law by root finding matches Monte Carlo") {
        const GidDistribution law(LaplaceExponent::gamma(10.0, 5.0));
        const double med = numerics::find_root([&](double x) { return law.cdf_numeric(x) - 0.5; }, 1e-6, 50.0, 1e-12).root;
        auto xs = oracle::gid_gamma_exact(10.0, 5.0, 1.0, 100000, 11);
        std::nth_element(xs.begin(), xs.begin() + 50000, xs.end());
        const double mc = xs[50000];
        // Standard error of a sample median is 1 / (2 f(m) sqrt(n)).
        const double se = 1.0 / (2.0 * law.pdf_numeric(med) * std::sqrt(1e5));
        CHECK(std::abs(mc - med) < 4.0 * se);
    }

    TEST_CASE("RNG streams are reproducible and independent") {
        numerics::RngStream a(42, 3), b(42, 3), c(42, 4);
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        const int n = 10000;
        for (int i = 0; i < n; ++i) {
            const double u = a.next_uniform();
            CHECK(u == b.next_uniform());
            const double v = c.next_uniform();
            sx += u; sy += v; sxx += u * u; syy += v * v; sxy += u * v;
        }
        const double cov = sxy / n - sx / n * sy / n;
        const double rho = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
        CHECK(std::abs(rho) < 0.01);
        CHECK(sx / n == doctest::Approx(0.5).epsilon(0.02));
    }

    TEST_CASE("uniforms lie strictly inside (0, 1) and pair exactly with their complement") {
        const numerics::RngStream s(7, 0);
        for (std::uint64_t p = 0; p < 20000; ++p) {
            const double u = s.uniform_at(p);
            const double v = s.complement_at(p);
            REQUIRE(u > 0.0);
            REQUIRE(u < 1.0);
            REQUIRE(u + v == 1.0);
        }
        CHECK(s.derive(1).uniform_at(0) != s.derive(2).uniform_at(0));
        numerics::RngStream t(7, 0);
        t.next_bits();
        CHECK(t.counter() == 1);
        CHECK(t.next_uniform() == s.uniform_at(1));
    }

    TEST_CASE("distinct seeds give distinct streams") {
        std::set<std::uint64_t> seen;
        for (std::uint64_t seed = 0; seed < 200; ++seed) seen.insert(numerics::RngStream(seed, 0).bits_at(0));
        CHECK(seen.size() == 200);
    }
}
