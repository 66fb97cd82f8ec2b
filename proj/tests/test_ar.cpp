#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "gidar/ar.hpp"
#include "gidar/errors.hpp"
#include "gidar/gid.hpp"

using namespace gidar;

namespace {

const LaplaceExponent kTs = LaplaceExponent::tempered_stable(1.0, 0.6);
const LaplaceExponent kIg = LaplaceExponent::inverse_gaussian(0.5, 1.0);

bool within(const McEstimate& e, double target, double k = 4.0) {
    return std::abs(e.value - target) < k * e.std_error + 1e-12;
}

}  // namespace

TEST_SUITE("ar") {
    TEST_CASE("parameter validation") {
        CHECK_NOTHROW(validate(RandomCoeff1{1.0}));
        CHECK_THROWS_AS(validate(RandomCoeff1{0.0}), DomainError);
        CHECK_THROWS_AS(validate(RandomCoeff1{1.2}), DomainError);
        CHECK_NOTHROW(validate(RandomCoeffK{0.2, {0.5, 0.3}}));
        CHECK_THROWS_AS(validate(RandomCoeffK{0.2, {0.5, 0.4}}), DomainError);
        CHECK_THROWS_AS(validate(RandomCoeffK{0.2, {0.9, -0.1}}), DomainError);
        CHECK_NOTHROW(validate(Linear1{0.0}));
        CHECK_THROWS_AS(validate(Linear1{1.0}), DomainError);
        CHECK_THROWS_AS(validate(Linear1{-0.3}), DomainError);
        CHECK_THROWS_AS(ArSimulator(Linear1{0.3}, LaplaceExponent::gamma(2.0, 1.0)), InvalidLawError);
        CHECK(ArSimulator(Linear1{0.3}, LaplaceExponent::gamma(2.0, 1.0), 10, true).uses_surrogate());
        CHECK_FALSE(ArSimulator(Linear1{0.3}, kTs).uses_surrogate());
    }

    TEST_CASE("innovation law follows the model") {
        CHECK(innovation_for(RandomCoeff1{0.3}, kTs).kind() == InnovationKind::GeometricScale);
        CHECK(innovation_for(RandomCoeffK{0.3, {0.7}}, kTs).kind() == InnovationKind::GeometricScale);
        CHECK(innovation_for(Linear1{0.3}, kTs).kind() == InnovationKind::Ratio);
    }

    TEST_CASE("same seed, same series; serial and parallel drawing agree") {
        ArSpec spec{RandomCoeff1{0.3}, kTs};
        spec.seed = 17;
        const auto a = simulate(spec);
        const auto b = simulate(spec);
        CHECK(a == b);
        CHECK(a.size() == 1000);
        spec.seed = 18;
        CHECK(simulate(spec) != a);
        const ArSimulator sim(RandomCoeffK{0.2, {0.5, 0.3}}, kIg, 100);
        const numerics::RngStream st(5, 2);
        CHECK(sim.simulate(500, st, true) == sim.simulate(500, st, false));
    }

    TEST_CASE("theta one gives iid marginal draws") {
        const ArSimulator sim(RandomCoeff1{1.0}, kTs, 0);
        const auto y = sim.simulate(40000, numerics::RngStream(2, 0));
        CHECK(std::abs(lag1_autocorrelation(y)) < 4.0 / std::sqrt(4e4));
        const GidDistribution d(kTs);
        for (double s : {0.5, 1.0, 2.0}) {
            const auto [v, se] = oracle::sample_lt(y, s);
            CHECK(std::abs(v - d.lt(s)) < 4.0 * se);
        }
    }

    TEST_CASE("stationary marginal for every model kind") {
        const std::vector<ArKind> kinds{RandomCoeff1{0.3}, RandomCoeffK{0.2, {0.5, 0.3}}, Linear1{0.3}};
        for (const auto& base : {kTs, kIg, LaplaceExponent::gamma(10.0, 5.0)}) {
            const GidDistribution d(base);
            for (const auto& kind : kinds) {
                if (std::holds_alternative<Linear1>(kind) && base.family() == Family::Gamma) continue;
                CAPTURE(base.describe());
                CAPTURE(kind.index());
                const ArSimulator sim(kind, base, 1000);
                const auto y = sim.simulate(20000, numerics::RngStream(11, kind.index()));
                for (double s : {0.5, 1.0, 2.0}) CHECK(within(empirical_lt(y, s), d.lt(s)));
            }
        }
    }

    TEST_CASE("joint transform of consecutive values") {
        const double theta = 0.3;
        const ArSimulator sim(RandomCoeff1{theta}, kTs, 1000);
        const auto y = sim.simulate(40000, numerics::RngStream(4, 0));
        for (double s1 : {0.5, 1.0, 2.0}) {
            for (double s2 : {0.5, 1.0, 2.0}) {
                CAPTURE(s1);
                CAPTURE(s2);
                CHECK(within(empirical_joint_lt(y, s1, s2), joint_lt(theta, kTs, s1, s2)));
            }
        }
        const GidDistribution d(kTs);
        CHECK(joint_lt(theta, kTs, 0.0, 1.3) == doctest::Approx(d.lt(1.3)));
        CHECK(joint_lt(theta, kTs, 1.3, 0.0) == doctest::Approx(d.lt(1.3)));
        CHECK(joint_lt(1.0, kTs, 0.7, 1.3) == doctest::Approx(d.lt(0.7) * d.lt(1.3)));
    }

    TEST_CASE("reversibility") {
        CHECK(reversibility_gap(0.3, kTs, {{1.0, 1.0}, {2.0, 2.0}}) == 0.0);
        CHECK(reversibility_gap(1.0, kTs, {{0.5, 2.0}}) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(reversibility_gap(0.3, kTs, {{0.5, 2.0}, {1.0, 3.0}}) > 1e-3);
        CHECK(reversibility_gap(0.3, LaplaceExponent::tempered_stable(5.0, 0.6), {{0.5, 2.0}}) > 0.0);
    }

    TEST_CASE("strong dependence near theta = 0 in the coin and 1 in the coefficient") {
        const ArSimulator rc(RandomCoeff1{0.01}, kTs, 1000);
        CHECK(lag1_autocorrelation(rc.simulate(20000, numerics::RngStream(1, 0))) > 0.9);
        const ArSimulator lin(Linear1{0.95}, kTs, 1000);
        CHECK(lag1_autocorrelation(lin.simulate(20000, numerics::RngStream(1, 0))) > 0.9);
        CHECK_THROWS_AS(lag1_autocorrelation({2.0, 2.0, 2.0}), DegenerateError);
    }

    TEST_CASE("errors") {
        const ArSimulator sim(RandomCoeff1{0.5}, kTs, 0);
        CHECK_THROWS_AS(sim.simulate(0, numerics::RngStream(1, 0)), DomainError);
        CHECK_THROWS_AS(empirical_lt({}, 1.0), DomainError);
        CHECK_THROWS_AS(empirical_joint_lt({1.0}, 1.0, 1.0), DomainError);
    }
}
