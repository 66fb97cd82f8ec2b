#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gidar/laplace_exponent.hpp"
#include "gidar/laplace_inversion.hpp"
#include "gidar/lt_sampler.hpp"
#include "gidar/rng.hpp"

namespace gidar {

struct Moments {
    double mean;
    double second_moment;
};

/// Power law f(x) ~ prefactor * x^exponent as x -> 0+.
struct TauberianAsymptote {
    double prefactor;
    double exponent;

    double operator()(double x) const;
};

/// Real zero of 1 + g(s) right of the branch point, if any.
struct RealPole {
    bool exists = false;
    double location = 0.0;
};

/**
 * Law on (0, inf) with Laplace transform 1 / (1 + g(s)).
 *
 * Equivalently S(E) with S the subordinator of exponent g and E ~ Exp(1).
 */
class GidDistribution {
public:
    explicit GidDistribution(LaplaceExponent exponent);

    const LaplaceExponent& exponent() const noexcept { return exponent_; }

    double lt(double s) const;
    Complex lt(Complex s) const;

    /// Transform of a geometric(theta) sum of iid copies: 1 / (1 + g(s) / theta).
    double geometric_sum_lt(double theta, double s) const;

    Moments moments() const;

    /// Only for (possibly scaled) tempered-stable and inverse-Gaussian exponents.
    TauberianAsymptote tauberian_asymptote() const;

    RealPole pole() const;
    /// Rightmost singularity of lt on the real axis (pole or branch point).
    double singularity_abscissa() const;

    numerics::InversionResult cdf_inversion(double x) const;
    numerics::InversionResult pdf_inversion(double x) const;
    /// Throws InversionError when the inversion error estimate exceeds 1e-6.
    double cdf_numeric(double x) const;
    double survival_numeric(double x) const;
    double pdf_numeric(double x) const;

    LtTransform transform() const;
    LtSampler sampler(SamplerOptions options = {}) const;

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;
    std::vector<double> sample(std::size_t n, const numerics::RngStream& stream) const;

private:
    LaplaceExponent exponent_;
    RealPole pole_;
};

/// Smallest x for which the numeric pdf is evaluated.
inline constexpr double kPdfFloor = 1e-6;

}  // namespace gidar
