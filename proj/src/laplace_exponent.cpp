#include "gidar/laplace_exponent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gidar/errors.hpp"

namespace gidar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

bool finite(double v) { return std::isfinite(v); }

[[noreturn]] void branch_cut(const char* family, double s) {
    std::ostringstream os;
    os << family << ": argument " << s << " lies on the branch cut";
    throw DomainError(os.str());
}

}  // namespace

namespace detail {

Complex log1p(Complex z) {
    const Complex u = 1.0 + z;
    const Complex um1 = u - 1.0;
    if (um1 == Complex(0.0, 0.0)) return z;
    return std::log(u) * (z / um1);
}

Complex expm1(Complex w) {
    const double a = w.real();
    const double b = w.imag();
    const double half_sin = std::sin(0.5 * b);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
    const double im = std::exp(a) * std::sin(b);
    return {re, im};
}

}  // namespace detail

std::string to_string(Family f) {
    switch (f) {
        case Family::TemperedStable: return "tempered_stable";
        case Family::Gamma: return "gamma";
        case Family::InverseGaussian: return "inverse_gaussian";
        case Family::Mixture: return "mixture";
        case Family::Scaled: return "scaled";
    }
    return "unknown";
}

LaplaceExponent LaplaceExponent::tempered_stable(double lambda, double beta) {
    require(finite(lambda) && lambda >= 0.0, "tempered_stable: lambda must be >= 0");
    require(finite(beta) && beta > 0.0 && beta < 1.0, "tempered_stable: beta must lie in (0, 1)");
    return LaplaceExponent(TemperedStable{lambda, beta});
}

LaplaceExponent LaplaceExponent::gamma(double alpha, double beta_rate) {
    require(finite(alpha) && alpha > 0.0, "gamma: alpha must be positive");
    require(finite(beta_rate) && beta_rate > 0.0, "gamma: rate must be positive");
    return LaplaceExponent(GammaExponent{alpha, beta_rate});
}

LaplaceExponent LaplaceExponent::inverse_gaussian(double delta, double gamma) {
    require(finite(delta) && delta > 0.0, "inverse_gaussian: delta must be positive");
    require(finite(gamma) && gamma > 0.0, "inverse_gaussian: gamma must be positive");
    return LaplaceExponent(InverseGaussian{delta, gamma});
}

LaplaceExponent LaplaceExponent::mixture(double c, const LaplaceExponent& g1,
                                         const LaplaceExponent& g2) {
    require(finite(c) && c >= 0.0 && c <= 1.0, "mixture: c must lie in [0, 1]");
    return LaplaceExponent(Mixture{c, std::make_shared<const LaplaceExponent>(g1),
                                   std::make_shared<const LaplaceExponent>(g2)});
}

LaplaceExponent LaplaceExponent::scaled(double theta, const LaplaceExponent& inner) {
    require(finite(theta) && theta > 0.0, "scaled: theta must be positive");
    return LaplaceExponent(Scaled{theta, std::make_shared<const LaplaceExponent>(inner)});
}

Family LaplaceExponent::family() const noexcept {
    return std::visit(Overloaded{
                          [](const TemperedStable&) { return Family::TemperedStable; },
                          [](const GammaExponent&) { return Family::Gamma; },
                          [](const InverseGaussian&) { return Family::InverseGaussian; },
                          [](const Mixture&) { return Family::Mixture; },
                          [](const Scaled&) { return Family::Scaled; },
                      },
                      node_);
}

double LaplaceExponent::eval(double s) const {
    return std::visit(
        Overloaded{
            [s](const TemperedStable& p) {
                if (s < -p.lambda) branch_cut("tempered_stable", s);
                if (p.lambda == 0.0) return std::pow(s, p.beta);
                return std::pow(p.lambda, p.beta) * std::expm1(p.beta * std::log1p(s / p.lambda));
            },
            [s](const GammaExponent& p) {
                if (s <= -p.beta_rate) branch_cut("gamma", s);
                return p.alpha * std::log1p(s / p.beta_rate);
            },
            [s](const InverseGaussian& p) {
                const double z = 2.0 * s / (p.gamma * p.gamma);
                if (z < -1.0) branch_cut("inverse_gaussian", s);
                return p.delta * p.gamma * z / (std::sqrt(1.0 + z) + 1.0);
            },
            [s](const Mixture& p) {
                // c = 0 or 1 must not touch the unused branch.
                if (p.c == 0.0) return p.g2->eval(s);
                if (p.c == 1.0) return p.g1->eval(s);
                return p.c * p.g1->eval(s) + (1.0 - p.c) * p.g2->eval(s);
            },
            [s](const Scaled& p) { return p.theta * p.inner->eval(s); },
        },
        node_);
}

Complex LaplaceExponent::eval(Complex s) const {
    if (s.imag() == 0.0) return {eval(s.real()), 0.0};
    return std::visit(
        Overloaded{
            [s](const TemperedStable& p) -> Complex {
                if (p.lambda == 0.0) return std::pow(s, p.beta);
                return std::pow(p.lambda, p.beta) * detail::expm1(p.beta * detail::log1p(s / p.lambda));
            },
            [s](const GammaExponent& p) -> Complex {
                return p.alpha * detail::log1p(s / p.beta_rate);
            },
            [s](const InverseGaussian& p) -> Complex {
                const Complex z = 2.0 * s / (p.gamma * p.gamma);
                return p.delta * p.gamma * z / (std::sqrt(1.0 + z) + 1.0);
            },
            [s](const Mixture& p) -> Complex {
                if (p.c == 0.0) return p.g2->eval(s);
                if (p.c == 1.0) return p.g1->eval(s);
                return p.c * p.g1->eval(s) + (1.0 - p.c) * p.g2->eval(s);
            },
            [s](const Scaled& p) -> Complex { return p.theta * p.inner->eval(s); },
        },
        node_);
}

double LaplaceExponent::deriv_at_zero(int order) const {
    if (order != 1 && order != 2) throw DomainError("deriv_at_zero: order must be 1 or 2");
    return std::visit(
        Overloaded{
            [order](const TemperedStable& p) {
                if (p.lambda == 0.0) {
                    throw DomainError("deriv_at_zero: stable exponent (lambda = 0) has no derivative at 0");
                }
                const double b = p.beta;
                return order == 1 ? b * std::pow(p.lambda, b - 1.0)
                                  : b * (b - 1.0) * std::pow(p.lambda, b - 2.0);
            },
            [order](const GammaExponent& p) {
                return order == 1 ? p.alpha / p.beta_rate
                                  : -p.alpha / (p.beta_rate * p.beta_rate);
            },
            [order](const InverseGaussian& p) {
                return order == 1 ? p.delta / p.gamma
                                  : -p.delta / (p.gamma * p.gamma * p.gamma);
            },
            [order](const Mixture& p) {
                if (p.c == 0.0) return p.g2->deriv_at_zero(order);
                if (p.c == 1.0) return p.g1->deriv_at_zero(order);
                return p.c * p.g1->deriv_at_zero(order) + (1.0 - p.c) * p.g2->deriv_at_zero(order);
            },
            [order](const Scaled& p) { return p.theta * p.inner->deriv_at_zero(order); },
        },
        node_);
}

double LaplaceExponent::branch_point() const {
    return std::visit(Overloaded{
                          [](const TemperedStable& p) { return -p.lambda; },
                          [](const GammaExponent& p) { return -p.beta_rate; },
                          [](const InverseGaussian& p) { return -0.5 * p.gamma * p.gamma; },
                          [](const Mixture& p) {
                              if (p.c == 0.0) return p.g2->branch_point();
                              if (p.c == 1.0) return p.g1->branch_point();
                              return std::max(p.g1->branch_point(), p.g2->branch_point());
                          },
                          [](const Scaled& p) { return p.inner->branch_point(); },
                      },
                      node_);
}

double LaplaceExponent::value_at_branch_point() const {
    return std::visit(
        Overloaded{
            [](const TemperedStable& p) { return -std::pow(p.lambda, p.beta); },
            [](const GammaExponent&) { return -std::numeric_limits<double>::infinity(); },
            [](const InverseGaussian& p) { return -p.delta * p.gamma; },
            [](const Mixture& p) {
                if (p.c == 0.0) return p.g2->value_at_branch_point();
                if (p.c == 1.0) return p.g1->value_at_branch_point();
                const double b = std::max(p.g1->branch_point(), p.g2->branch_point());
                const auto at = [b](const LaplaceExponent& g) {
                    return g.branch_point() == b ? g.value_at_branch_point() : g.eval(b);
                };
                return p.c * at(*p.g1) + (1.0 - p.c) * at(*p.g2);
            },
            [](const Scaled& p) { return p.theta * p.inner->value_at_branch_point(); },
        },
        node_);
}

double LaplaceExponent::tail_index() const {
    return std::visit(Overloaded{
                          [](const TemperedStable& p) { return p.beta; },
                          [](const GammaExponent&) { return 0.0; },
                          [](const InverseGaussian&) { return 0.5; },
                          [](const Mixture& p) {
                              if (p.c == 0.0) return p.g2->tail_index();
                              if (p.c == 1.0) return p.g1->tail_index();
                              return std::max(p.g1->tail_index(), p.g2->tail_index());
                          },
                          [](const Scaled& p) { return p.inner->tail_index(); },
                      },
                      node_);
}

std::string LaplaceExponent::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const TemperedStable& p) {
                       os << "TemperedStable{lambda=" << p.lambda << ", beta=" << p.beta << "}";
                   },
                   [&](const GammaExponent& p) {
                       os << "Gamma{alpha=" << p.alpha << ", beta=" << p.beta_rate << "}";
                   },
                   [&](const InverseGaussian& p) {
                       os << "InverseGaussian{delta=" << p.delta << ", gamma=" << p.gamma << "}";
                   },
                   [&](const Mixture& p) {
                       os << "Mixture{c=" << p.c << ", " << p.g1->describe() << ", "
                          << p.g2->describe() << "}";
                   },
                   [&](const Scaled& p) {
                       os << "Scaled{theta=" << p.theta << ", " << p.inner->describe() << "}";
                   },
               },
               node_);
    return os.str();
}

double mixture_lt(const LaplaceExponent& g1, const LaplaceExponent& g2, double c, double s) {
    require(c > 0.0 && c < 1.0, "mixture_lt: c must lie in (0, 1)");
    require(s >= 0.0, "mixture_lt: s must be nonnegative");
    return 1.0 / (1.0 + c * g1.eval(s) + (1.0 - c) * g2.eval(s));
}

}  // namespace gidar
