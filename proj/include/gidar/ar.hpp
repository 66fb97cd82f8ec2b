#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "gidar/innovation.hpp"
#include "gidar/laplace_exponent.hpp"
#include "gidar/lt_sampler.hpp"
#include "gidar/rng.hpp"

namespace gidar {

/// Y_n = eps_n with probability theta, else Y_{n-1} + eps_n.
struct RandomCoeff1 {
    double theta;
};

/// Y_n = eps_n with probability theta, else Y_{n-i} + eps_n with probability lag_probs[i-1].
struct RandomCoeffK {
    double theta;
    std::vector<double> lag_probs;
};

/// Y_n = theta Y_{n-1} + eps_n.
struct Linear1 {
    double theta;
};

using ArKind = std::variant<RandomCoeff1, RandomCoeffK, Linear1>;

struct ArSpec {
    ArKind kind;
    LaplaceExponent base;
    std::size_t length = 1000;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
    /// Use the moment-matched surrogate when the linear-model innovation
    /// transform is not a distribution.
    bool allow_invalid = false;
};

/// Throws DomainError unless the kind's parameters are admissible.
void validate(const ArKind& kind);

/// Innovation law implied by the model kind and the stationary marginal.
InnovationLaw innovation_for(const ArKind& kind, const LaplaceExponent& base);

/**
 * Reusable simulator: samplers for the innovations and the stationary law
 * are tabulated once and shared by every series it produces.
 *
 * Randomness comes from three children of the caller's stream: innovations,
 * lag selection and initial values, so swapping one sampler leaves the other
 * draws untouched.
 */
class ArSimulator {
public:
    ArSimulator(ArKind kind, const LaplaceExponent& base, std::size_t burn_in = 1000,
                bool allow_invalid = false);

    /// `parallel` only affects how innovations are drawn; output is identical.
    std::vector<double> simulate(std::size_t length, const numerics::RngStream& stream,
                                 bool parallel = true) const;

    const ArKind& kind() const noexcept { return kind_; }
    const InnovationLaw& innovation() const noexcept { return innovation_; }
    /// True when the innovations come from the moment-matched surrogate.
    bool uses_surrogate() const noexcept { return surrogate_; }

private:
    ArKind kind_;
    InnovationLaw innovation_;
    std::size_t burn_in_;
    bool surrogate_ = false;
    LtSampler innovation_sampler_;
    LtSampler stationary_sampler_;
};

std::vector<double> simulate(const ArSpec& spec);

/// Closed-form joint transform of (Y_{n-1}, Y_n) for the random-coefficient model.
double joint_lt(double theta, const LaplaceExponent& base, double s1, double s2);

double reversibility_gap(double theta, const LaplaceExponent& base,
                         const std::vector<std::pair<double, double>>& grid);

/// Monte Carlo mean with a batch-means standard error (serial dependence aware).
struct McEstimate {
    double value;
    double std_error;
};

McEstimate empirical_lt(const std::vector<double>& series, double s, std::size_t batches = 50);
McEstimate empirical_joint_lt(const std::vector<double>& series, double s1, double s2,
                              std::size_t batches = 50);

double lag1_autocorrelation(const std::vector<double>& series);

}  // namespace gidar
