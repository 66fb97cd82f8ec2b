#pragma once

#include <functional>

namespace gidar::numerics {

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/**
 * Bracketed root of a continuous function.
 *
 * Illinois-modified regula falsi with a bisection fallback whenever the
 * interpolated step fails to shrink the bracket by half; the bisection
 * fallback guarantees convergence. Stops when the
 * bracket is narrower than x_tol or h hits zero exactly.
 * Throws RootError if h(lo) and h(hi) have the same sign.
 */
RootResult find_root(const std::function<double(double)>& h, double lo, double hi, double x_tol,
                     int max_iterations = 200);

/// Same, with h(lo) and h(hi) already known.
RootResult find_root(const std::function<double(double)>& h, double lo, double hi, double h_lo,
                     double h_hi, double x_tol, int max_iterations = 200);

}  // namespace gidar::numerics
