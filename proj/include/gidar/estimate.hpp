#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gidar/laplace_exponent.hpp"

namespace gidar {

struct SolverInfo {
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

/// Family parameters recovered by the method of moments.
struct MomEstimate {
    std::string name1, name2;
    double param1 = 0.0;
    double param2 = 0.0;
    SolverInfo solver;
    bool in_domain = true;  ///< false when an estimate falls outside the family's parameter space
    std::string diagnostic;
};

struct EstimationResult {
    double theta_hat = 0.0;
    std::map<std::string, double> family_params;
    double m1_hat = 0.0;
    double m2_hat = 0.0;
    SolverInfo solver;
    bool in_domain = true;
    std::string diagnostic;
    std::size_t n = 0;
};

/// Lag-one slope (sum Y_t Y_{t-1} - m Ybar_lag^2) / sum (Y_{t-1} - Ybar_lag)^2 over the
/// m = n - 1 consecutive pairs. With `with_intercept` the numerator centres
/// Y_t on its own mean, giving the ordinary least-squares slope.
double cls_theta(const std::vector<double>& series, bool with_intercept = false);

struct ResidualMoments {
    double m1;
    double m2;
};

/// Moments of eps_t = Y_t - theta_hat Y_{t-1}, t = 1..n-1.
ResidualMoments residual_moments(const std::vector<double>& series, double theta_hat);

/// Innovation moments of the linear model, from the true parameters.
ResidualMoments ratio_moments(double theta, const LaplaceExponent& base);

/// (lambda, beta) for the tempered-stable family.
MomEstimate mom_tempered_stable(double m1, double m2, double theta_hat);
/// (beta, alpha) for the gamma family; beta is the rate.
MomEstimate mom_gamma(double m1, double m2, double theta_hat);
/// (gamma, delta) for the inverse-Gaussian family.
MomEstimate mom_inverse_gaussian(double m1, double m2, double theta_hat);
/// Reported parameter order: (lambda, beta), (beta, alpha) or (gamma, delta).
std::pair<std::string, std::string> mom_parameter_names(Family family);
MomEstimate mom(Family family, double m1, double m2, double theta_hat);

/// The gamma rate with the denominator grouped as m2 (1 - theta - 2 m1^2);
/// kept for the formula audit only.
double mom_gamma_beta_as_printed(double m1, double m2, double theta_hat);

/// cls_theta -> residual_moments -> family moments.
EstimationResult estimate(const std::vector<double>& series, Family family, bool with_intercept = false);

// ---------------------------------------------------------------------------
// Simulation study
// ---------------------------------------------------------------------------

struct StudyConfig {
    LaplaceExponent base = LaplaceExponent::gamma(2.0, 1.0);
    double theta = 0.3;
    std::size_t replicates = 500;
    std::size_t length = 1000;
    std::size_t burn_in = 1000;
    std::uint64_t seed = 1;
    bool with_intercept = false;
    bool allow_invalid = false;
};

struct ReplicateResult {
    std::size_t replicate = 0;
    double theta_hat = 0.0;
    double param1_hat = 0.0;
    double param2_hat = 0.0;
    bool converged = false;
    bool in_domain = false;
    std::string message;
};

struct ParamSummary {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    std::size_t count = 0;
};

struct StudyReport {
    StudyConfig config;
    std::vector<ReplicateResult> replicates;
    ParamSummary theta, param1, param2;
    std::size_t failures = 0;
    bool surrogate_innovations = false;
};

enum class ExecutionPolicy { Serial, Parallel };

/// Replicate r uses RngStream(seed, r), so the report does not depend on the policy.
StudyReport run_study(const StudyConfig& config, ExecutionPolicy policy = ExecutionPolicy::Parallel);

ParamSummary summarize(const std::string& name, std::vector<double> values);

}  // namespace gidar
