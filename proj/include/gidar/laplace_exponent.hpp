#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>

namespace gidar {

using Complex = std::complex<double>;

class LaplaceExponent;

/// g(s) = (s + lambda)^beta - lambda^beta. lambda = 0 gives the stable
/// exponent s^beta (Mittag-Leffler marginals).
struct TemperedStable {
    double lambda;
    double beta;
};

/// g(s) = alpha log(1 + s / beta_rate). The rate keeps its own name so it
/// cannot be confused with the tempered-stable index.
struct GammaExponent {
    double alpha;
    double beta_rate;
};

/// g(s) = delta gamma (sqrt(1 + 2 s / gamma^2) - 1).
struct InverseGaussian {
    double delta;
    double gamma;
};

/// g(s) = c g1(s) + (1 - c) g2(s).
struct Mixture {
    double c;
    std::shared_ptr<const LaplaceExponent> g1;
    std::shared_ptr<const LaplaceExponent> g2;
};

/// g(s) = theta inner(s).
struct Scaled {
    double theta;
    std::shared_ptr<const LaplaceExponent> inner;
};

enum class Family { TemperedStable, Gamma, InverseGaussian, Mixture, Scaled };

std::string to_string(Family f);

/**
 * A Bernstein function used as a Laplace exponent.
 *
 * Values are immutable; mixtures and scalings share their children, so
 * copying is cheap and nesting depth is unrestricted.
 */
class LaplaceExponent {
public:
    using Node = std::variant<TemperedStable, GammaExponent, InverseGaussian, Mixture, Scaled>;

    static LaplaceExponent tempered_stable(double lambda, double beta);
    static LaplaceExponent gamma(double alpha, double beta_rate);
    static LaplaceExponent inverse_gaussian(double delta, double gamma);
    static LaplaceExponent mixture(double c, const LaplaceExponent& g1, const LaplaceExponent& g2);
    static LaplaceExponent scaled(double theta, const LaplaceExponent& inner);

    const Node& node() const noexcept { return node_; }
    Family family() const noexcept;

    /// Principal-branch evaluation. Throws DomainError on the branch cut.
    Complex eval(Complex s) const;
    double eval(double s) const;

    /// g'(0) for order 1, g''(0) for order 2.
    double deriv_at_zero(int order) const;

    /// Right end of the branch cut on the negative real axis.
    double branch_point() const;

    /// lim g(s) as s decreases to the branch point; may be -infinity.
    double value_at_branch_point() const;

    /// rho such that g(s) grows like s^rho at infinity (0 for logarithmic growth).
    double tail_index() const;

    std::string describe() const;

private:
    explicit LaplaceExponent(Node node) : node_(std::move(node)) {}
    Node node_;
};

/// 1 / (1 + c g1(s) + (1 - c) g2(s)).
double mixture_lt(const LaplaceExponent& g1, const LaplaceExponent& g2, double c, double s);

namespace detail {
/// log(1 + z) without cancellation for small |z|.
Complex log1p(Complex z);
/// exp(w) - 1 without cancellation for small |w|.
Complex expm1(Complex w);
}  // namespace detail

}  // namespace gidar
