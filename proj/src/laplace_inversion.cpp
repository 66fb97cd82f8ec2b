#include "gidar/laplace_inversion.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gidar/errors.hpp"

namespace gidar::numerics {

double talbot_sum(const ComplexTransform& transform, double x, int nodes, double shift) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("invert_laplace: x must be positive and finite, got " + std::to_string(x));
    }
    if (nodes < 2) {
        throw DomainError("invert_laplace: need at least 2 nodes");
    }
    const double r = 2.0 * nodes / (5.0 * x);
    const double m = static_cast<double>(nodes);

    double acc = 0.5 * (transform(Complex(r + shift, 0.0)) * std::exp(r * x)).real();
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * std::numbers::pi / m;
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex s(r * theta * cot, r * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const Complex term = std::exp(x * s) * transform(s + shift) * Complex(1.0, sigma);
        acc += term.real();
    }
    const double value = std::exp(shift * x) * (r / m) * acc;
    if (!std::isfinite(value)) {
        throw InversionError("invert_laplace: non-finite result at x = " + std::to_string(x));
    }
    return value;
}

InversionResult invert_laplace(const ComplexTransform& transform, double x,
                               const InversionOptions& options) {
    InversionResult out;
    out.value = talbot_sum(transform, x, options.nodes, options.shift);
    out.nodes_used = options.nodes;
    if (options.estimate_error) {
        const int coarse = std::max(2, (3 * options.nodes) / 4);
        const double v2 = talbot_sum(transform, x, coarse, options.shift);
        out.error_estimate = std::abs(out.value - v2);
        out.nodes_used += coarse;
    }
    if (options.enforce_tolerance &&
        out.error_estimate > options.abs_tol + options.rel_tol * std::abs(out.value)) {
        throw InversionError("invert_laplace: error estimate " + std::to_string(out.error_estimate) +
                             " exceeds tolerance at x = " + std::to_string(x));
    }
    return out;
}

}  // namespace gidar::numerics
