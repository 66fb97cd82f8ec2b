#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gidar/laplace_inversion.hpp"
#include "gidar/rng.hpp"

namespace gidar {

/// A law on (0, inf) described through its Laplace transform.
struct LtTransform {
    numerics::ComplexTransform lt;           ///< E exp(-sX)
    numerics::ComplexTransform survival_lt;  ///< (1 - lt(s)) / s, finite at s = 0
    double singularity = 0.0;                ///< rightmost singular abscissa of lt, <= 0
    double scale_hint = 1.0;                 ///< typical magnitude of X
};

struct SamplerOptions {
    int nodes = 24;
    double x_floor = 1e-280;     ///< quantiles below this are returned as x_floor
    double tail_target = 1e-17;  ///< table spans F and 1 - F down to this level
    int max_doublings = 60;      ///< beyond the table top before giving up
    double monotone_tol = 1e-8;
};

/**
 * Inverse-transform sampler for a law known only through its Laplace
 * transform, optionally with an atom at zero (atom = 1 is the point mass).
 *
 * Construction tabulates F and 1 - F (each a fixed-Talbot inversion) on a
 * geometric grid; each draw then brackets its quantile from the table and
 * polishes it with a bracketed secant/bisection root solve on the exact
 * inversions. The object is immutable after construction and safe to share
 * between threads.
 */
class LtSampler {
public:
    explicit LtSampler(LtTransform transform, double atom = 0.0, SamplerOptions options = {});

    double atom() const noexcept { return atom_; }

    /// CDF / survival function of the continuous part.
    double cdf(double x) const;
    double survival(double x) const;

    /// Quantile of the continuous part at probability u, with v = 1 - u
    /// passed separately so upper-tail quantiles keep full precision.
    double quantile(double u, double v) const;

    /// One draw (atom included) from position `position` of the stream.
    double draw(const numerics::RngStream& stream, std::uint64_t position) const;

    /// Reference kernel: one draw after another.
    void sample_serial(const numerics::RngStream& stream, std::uint64_t offset,
                       std::span<double> out) const;
    /// OpenMP kernel; bit-identical to sample_serial.
    void sample_parallel(const numerics::RngStream& stream, std::uint64_t offset,
                         std::span<double> out) const;

    std::vector<double> sample(std::size_t n, const numerics::RngStream& stream,
                               bool parallel = true) const;

    std::size_t table_size() const noexcept { return xs_.size(); }
    double table_min() const noexcept { return xs_.front(); }
    double table_max() const noexcept { return xs_.back(); }

private:
    double root_on(bool lower, double target, double lo, double hi, double h_lo, double h_hi) const;

    LtTransform transform_;
    double atom_;
    SamplerOptions options_;
    std::vector<double> xs_;
    std::vector<double> cdf_;
    std::vector<double> surv_;
};

}  // namespace gidar
