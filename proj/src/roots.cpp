#include "gidar/roots.hpp"

#include <cmath>
#include <string>

#include "gidar/errors.hpp"

namespace gidar::numerics {

RootResult find_root(const std::function<double(double)>& h, double lo, double hi, double x_tol,
                     int max_iterations) {
    return find_root(h, lo, hi, h(lo), h(hi), x_tol, max_iterations);
}

RootResult find_root(const std::function<double(double)>& h, double lo, double hi, double h_lo,
                     double h_hi, double x_tol, int max_iterations) {
    if (!(lo < hi)) std::swap(lo, hi), std::swap(h_lo, h_hi);
    if (h_lo == 0.0) return {lo, 0.0, 0, true};
    if (h_hi == 0.0) return {hi, 0.0, 0, true};
    if (std::isnan(h_lo) || std::isnan(h_hi) || (h_lo > 0.0) == (h_hi > 0.0)) {
        throw RootError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "] (h = " + std::to_string(h_lo) + ", " +
                        std::to_string(h_hi) + ")");
    }

    RootResult out;
    int side = 0;  // which end was retained last, for the Illinois halving
    for (int it = 1; it <= max_iterations; ++it) {
        const double width = hi - lo;
        double x = (lo * h_hi - hi * h_lo) / (h_hi - h_lo);
        if (!(x > lo && x < hi)) x = lo + 0.5 * width;
        const double hx = h(x);
        out.iterations = it;
        out.root = x;
        out.residual = hx;
        if (hx == 0.0) {
            out.converged = true;
            return out;
        }
        if ((hx > 0.0) == (h_lo > 0.0)) {
            lo = x;
            h_lo = hx;
            if (side == -1) h_hi *= 0.5;
            side = -1;
        } else {
            hi = x;
            h_hi = hx;
            if (side == 1) h_lo *= 0.5;
            side = 1;
        }
        if (hi - lo > 0.5 * width) {
            // Slow progress: force a bisection step.
            const double mid = lo + 0.5 * (hi - lo);
            const double hm = h(mid);
            out.root = mid;
            out.residual = hm;
            if (hm == 0.0) {
                out.converged = true;
                return out;
            }
            if ((hm > 0.0) == (h_lo > 0.0)) {
                lo = mid;
                h_lo = hm;
            } else {
                hi = mid;
                h_hi = hm;
            }
            side = 0;
        }
        if (hi - lo <= x_tol) {
            out.root = std::abs(h_lo) < std::abs(h_hi) ? lo : hi;
            out.residual = std::abs(h_lo) < std::abs(h_hi) ? h_lo : h_hi;
            out.converged = true;
            return out;
        }
    }
    return out;
}

}  // namespace gidar::numerics
