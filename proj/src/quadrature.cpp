#include "gidar/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "gidar/errors.hpp"

namespace gidar::numerics {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478673, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk21(const RealFunction& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = kWgk[10] * fc;
    double gauss = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    const double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) {
        throw QuadratureError("quadrature: non-finite integrand on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]");
    }
    return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate_interval(const RealFunction& f, double a, double b, double rel_tol,
                                    double abs_tol, int max_intervals) {
    std::priority_queue<Segment> heap;
    Segment first = gk21(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int count = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && count < max_intervals) {
        const Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        const Segment left = gk21(f, worst.a, mid);
        const Segment right = gk21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to shed accumulated cancellation in the running totals.
    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    QuadratureResult out;
    out.value = value;
    out.abs_error = err;
    out.intervals = count;
    out.converged = err <= std::max(abs_tol, rel_tol * std::abs(value));
    return out;
}

QuadratureResult quad_semi_infinite_result(const RealFunction& f, double rel_tol, double scale,
                                           double abs_tol) {
    if (!(scale > 0.0)) throw DomainError("quad_semi_infinite: scale must be positive");
    const RealFunction mapped = [&](double t) {
        const double w = 1.0 - t;
        const double y = scale * t / w;
        if (!std::isfinite(y)) return 0.0;
        const double v = f(y);
        return v == 0.0 ? 0.0 : v * scale / (w * w);
    };
    return integrate_interval(mapped, 0.0, 1.0, rel_tol, abs_tol);
}

double quad_semi_infinite(const RealFunction& f, double rel_tol, double scale, double abs_tol) {
    const auto res = quad_semi_infinite_result(f, rel_tol, scale, abs_tol);
    if (!res.converged) {
        throw QuadratureError("quad_semi_infinite: reached " + std::to_string(res.intervals) +
                              " subintervals with error " + std::to_string(res.abs_error) +
                              " for value " + std::to_string(res.value));
    }
    return res.value;
}

}  // namespace gidar::numerics
