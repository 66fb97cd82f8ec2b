#pragma once

#include <functional>

namespace gidar::numerics {

using RealFunction = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive 21-point Gauss-Kronrod on [a, b]. Endpoints are never
/// evaluated, so integrable endpoint singularities are allowed.
QuadratureResult integrate_interval(const RealFunction& f, double a, double b, double rel_tol,
                                    double abs_tol = 0.0, int max_intervals = 4000);

/**
 * Integral over (0, inf) of an integrand decaying like e^{-y/scale}.
 *
 * Uses y = scale * t / (1 - t) on t in (0, 1). Throws QuadratureError when
 * the subdivision budget is exhausted before rel_tol is met.
 */
double quad_semi_infinite(const RealFunction& f, double rel_tol, double scale = 1.0,
                          double abs_tol = 0.0);

QuadratureResult quad_semi_infinite_result(const RealFunction& f, double rel_tol,
                                           double scale = 1.0, double abs_tol = 0.0);

}  // namespace gidar::numerics
