#pragma once

#include <complex>
#include <functional>

namespace gidar::numerics {

using Complex = std::complex<double>;
using ComplexTransform = std::function<Complex(Complex)>;

struct InversionResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< |f_M - f_{M'}| with M' = 3M/4
    int nodes_used = 0;
};

struct InversionOptions {
    int nodes = 24;
    /// Abscissa left of which all singularities lie. The transform is
    /// inverted as e^{shift x} L^{-1}{F(s + shift)}, which keeps relative
    /// accuracy when the original is exponentially small.
    double shift = 0.0;
    bool estimate_error = true;
    /// Throw InversionError if error_estimate > abs_tol + rel_tol |value|.
    bool enforce_tolerance = false;
    double rel_tol = 1e-6;
    double abs_tol = 1e-14;
};

/**
 * Fixed-Talbot inversion of a Laplace transform at x > 0.
 *
 * The contour s(t) = r t (cot t + i), r = 2M / (5x), wraps the negative real
 * axis, so F must be analytic off (-inf, shift]. In double precision the
 * roundoff grows like e^{2M/5}; M around 20-24 is the sweet spot.
 */
InversionResult invert_laplace(const ComplexTransform& transform, double x,
                               const InversionOptions& options = {});

/// Single fixed-Talbot sum with M nodes, no error estimate.
double talbot_sum(const ComplexTransform& transform, double x, int nodes, double shift = 0.0);

}  // namespace gidar::numerics
