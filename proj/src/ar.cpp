#include "gidar/ar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gidar/errors.hpp"
#include "gidar/gid.hpp"

namespace gidar {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t history_needed(const ArKind& kind) {
    if (const auto* k = std::get_if<RandomCoeffK>(&kind)) return k->lag_probs.size();
    return 1;
}

// Mean with a batch-means standard error of h(t) for t = 0..n-1.
template <class H>
McEstimate batch_mean(std::size_t n, std::size_t batches, H h) {
    if (n == 0) throw DomainError("empirical transform: empty series");
    double total = 0.0;
    for (std::size_t t = 0; t < n; ++t) total += h(t);
    const double mean = total / static_cast<double>(n);
    const std::size_t b = std::min(batches, n);
    if (b < 2) return {mean, 0.0};
    const std::size_t len = n / b;
    double ss = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
        double acc = 0.0;
        for (std::size_t t = j * len; t < (j + 1) * len; ++t) acc += h(t);
        const double d = acc / static_cast<double>(len) - mean;
        ss += d * d;
    }
    const double var_batch = ss / static_cast<double>(b - 1);
    return {mean, std::sqrt(var_batch / static_cast<double>(b))};
}

}  // namespace

void validate(const ArKind& kind) {
    std::visit(Overloaded{
                   [](const RandomCoeff1& k) {
                       if (!(k.theta > 0.0 && k.theta <= 1.0)) {
                           throw DomainError("rc1: theta must lie in (0, 1]");
                       }
                   },
                   [](const RandomCoeffK& k) {
                       if (!(k.theta > 0.0 && k.theta <= 1.0)) {
                           throw DomainError("rck: theta must lie in (0, 1]");
                       }
                       if (k.lag_probs.empty()) throw DomainError("rck: at least one lag is required");
                       double sum = 0.0;
                       for (double p : k.lag_probs) {
                           if (!(p >= 0.0)) throw DomainError("rck: lag probabilities must be nonnegative");
                           sum += p;
                       }
                       if (std::abs(k.theta + sum - 1.0) > 1e-9) {
                           throw DomainError("rck: theta plus the lag probabilities must sum to 1");
                       }
                   },
                   [](const Linear1& k) {
                       if (!(k.theta >= 0.0 && k.theta < 1.0)) {
                           throw DomainError("linear: theta must lie in [0, 1)");
                       }
                   },
               },
               kind);
}

InnovationLaw innovation_for(const ArKind& kind, const LaplaceExponent& base) {
    validate(kind);
    return std::visit(Overloaded{
                          [&](const RandomCoeff1& k) { return InnovationLaw::geometric_scale(k.theta, base); },
                          [&](const RandomCoeffK& k) { return InnovationLaw::geometric_scale(k.theta, base); },
                          [&](const Linear1& k) { return InnovationLaw::ratio(k.theta, base); },
                      },
                      kind);
}

ArSimulator::ArSimulator(ArKind kind, const LaplaceExponent& base, std::size_t burn_in,
                         bool allow_invalid)
    : kind_(std::move(kind)),
      innovation_(innovation_for(kind_, base)),
      burn_in_(burn_in),
      surrogate_(innovation_.kind() == InnovationKind::Ratio && !innovation_.validity_check().valid),
      innovation_sampler_(innovation_.sampler(allow_invalid)),
      stationary_sampler_(GidDistribution(base).sampler()) {}

std::vector<double> ArSimulator::simulate(std::size_t length, const numerics::RngStream& stream,
                                          bool parallel) const {
    if (length == 0) throw DomainError("simulate: length must be at least 1");
    const std::size_t total = burn_in_ + length;
    const std::size_t k = history_needed(kind_);

    const auto eps_stream = stream.derive(0);
    const auto lag_stream = stream.derive(1);
    const auto init_stream = stream.derive(2);

    // y[0..k-1] are the pre-series values, iid from the stationary law.
    std::vector<double> y(k + total);
    stationary_sampler_.sample_serial(init_stream, 0, std::span<double>(y.data(), k));
    std::vector<double> eps(total);
    if (parallel) {
        innovation_sampler_.sample_parallel(eps_stream, 0, eps);
    } else {
        innovation_sampler_.sample_serial(eps_stream, 0, eps);
    }

    std::visit(Overloaded{
                   [&](const RandomCoeff1& m) {
                       for (std::size_t n = 0; n < total; ++n) {
                           const bool fresh = lag_stream.uniform_at(n) < m.theta;
                           y[n + 1] = (fresh ? 0.0 : y[n]) + eps[n];
                       }
                   },
                   [&](const RandomCoeffK& m) {
                       for (std::size_t n = 0; n < total; ++n) {
                           const double u = lag_stream.uniform_at(n);
                           double prev = 0.0;
                           double cut = m.theta;
                           if (u >= cut) {
                               std::size_t lag = m.lag_probs.size();
                               for (std::size_t i = 0; i < m.lag_probs.size(); ++i) {
                                   cut += m.lag_probs[i];
                                   if (u < cut) {
                                       lag = i + 1;
                                       break;
                                   }
                               }
                               prev = y[n + k - lag];
                           }
                           y[n + k] = prev + eps[n];
                       }
                   },
                   [&](const Linear1& m) {
                       for (std::size_t n = 0; n < total; ++n) y[n + 1] = m.theta * y[n] + eps[n];
                   },
               },
               kind_);

    return std::vector<double>(y.end() - static_cast<std::ptrdiff_t>(length), y.end());
}

std::vector<double> simulate(const ArSpec& spec) {
    const ArSimulator sim(spec.kind, spec.base, spec.burn_in, spec.allow_invalid);
    return sim.simulate(spec.length, numerics::RngStream(spec.seed, spec.stream_index));
}

double joint_lt(double theta, const LaplaceExponent& base, double s1, double s2) {
    if (!(s1 >= 0.0 && s2 >= 0.0)) throw DomainError("joint_lt: arguments must be nonnegative");
    const double mix = theta / (1.0 + base.eval(s1)) + (1.0 - theta) / (1.0 + base.eval(s1 + s2));
    return mix / (1.0 + theta * base.eval(s2));
}

double reversibility_gap(double theta, const LaplaceExponent& base,
                         const std::vector<std::pair<double, double>>& grid) {
    double gap = 0.0;
    for (const auto& [a, b] : grid) {
        gap = std::max(gap, std::abs(joint_lt(theta, base, a, b) - joint_lt(theta, base, b, a)));
    }
    return gap;
}

McEstimate empirical_lt(const std::vector<double>& series, double s, std::size_t batches) {
    return batch_mean(series.size(), batches, [&](std::size_t t) { return std::exp(-s * series[t]); });
}

McEstimate empirical_joint_lt(const std::vector<double>& series, double s1, double s2,
                              std::size_t batches) {
    if (series.size() < 2) throw DomainError("empirical_joint_lt: series length must be at least 2");
    return batch_mean(series.size() - 1, batches, [&](std::size_t t) {
        return std::exp(-s1 * series[t] - s2 * series[t + 1]);
    });
}

double lag1_autocorrelation(const std::vector<double>& series) {
    const std::size_t n = series.size();
    if (n < 3) throw DomainError("lag1_autocorrelation: series length must be at least 3");
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double d = series[t] - mean;
        den += d * d;
        if (t > 0) num += d * (series[t - 1] - mean);
    }
    if (den == 0.0) throw DegenerateError("lag1_autocorrelation: constant series");
    return num / den;
}

}  // namespace gidar
