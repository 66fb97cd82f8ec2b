#include "gidar/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>
#include <variant>

#include "gidar/ar.hpp"
#include "gidar/errors.hpp"
#include "gidar/roots.hpp"

namespace gidar {

double cls_theta(const std::vector<double>& series, bool with_intercept) {
    const std::size_t n = series.size();
    if (n < 3) throw DomainError("cls_theta: series length must be at least 3");
    const std::size_t m = n - 1;
    double lag_mean = 0.0, cur_mean = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        lag_mean += series[t - 1];
        cur_mean += series[t];
    }
    lag_mean /= static_cast<double>(m);
    cur_mean /= static_cast<double>(m);

    double cross = 0.0, den = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double d = series[t - 1] - lag_mean;
        den += d * d;
        cross += with_intercept ? d * (series[t] - cur_mean) : series[t] * series[t - 1];
    }
    if (den == 0.0) throw DegenerateError("cls_theta: lagged series is constant");
    const double num = with_intercept ? cross : cross - static_cast<double>(m) * lag_mean * lag_mean;
    return num / den;
}

ResidualMoments residual_moments(const std::vector<double>& series, double theta_hat) {
    if (!(std::abs(theta_hat) < 1.0)) throw DomainError("residual_moments: |theta_hat| must be below 1");
    if (series.size() < 2) throw DomainError("residual_moments: series length must be at least 2");
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t t = 1; t < series.size(); ++t) {
        const double e = series[t] - theta_hat * series[t - 1];
        s1 += e;
        s2 += e * e;
    }
    const double m = static_cast<double>(series.size() - 1);
    return {s1 / m, s2 / m};
}

ResidualMoments ratio_moments(double theta, const LaplaceExponent& base) {
    const double d1 = base.deriv_at_zero(1);
    const double d2 = base.deriv_at_zero(2);
    return {(1.0 - theta) * d1, (theta * theta - 1.0) * d2 + 2.0 * (1.0 - theta) * d1 * d1};
}

namespace {

void check_theta(double theta_hat, const char* who) {
    if (!(std::abs(theta_hat) < 1.0)) {
        throw DomainError(std::string(who) + ": |theta_hat| must be below 1");
    }
}

// m2 (1 - theta) - 2 m1^2, the common denominator of the closed forms.
double spread(double m1, double m2, double theta) { return m2 * (1.0 - theta) - 2.0 * m1 * m1; }

MomEstimate named(Family family) {
    MomEstimate est;
    std::tie(est.name1, est.name2) = mom_parameter_names(family);
    return est;
}

}  // namespace

std::pair<std::string, std::string> mom_parameter_names(Family family) {
    switch (family) {
        case Family::TemperedStable: return {"lambda", "beta"};
        case Family::Gamma: return {"beta", "alpha"};
        case Family::InverseGaussian: return {"gamma", "delta"};
        default: break;
    }
    throw UnsupportedFamilyError("no moment estimator for family " + to_string(family));
}

MomEstimate mom_tempered_stable(double m1, double m2, double theta_hat) {
    check_theta(theta_hat, "mom_tempered_stable");
    if (!(m1 > 0.0)) throw DomainError("mom_tempered_stable: m1 must be positive");
    MomEstimate est = named(Family::TemperedStable);
    const double k = spread(m1, m2, theta_hat) / (m1 * (1.0 - theta_hat * theta_hat));
    // beta = 1 - lambda k substituted into m1 = (1 - theta) beta lambda^(beta - 1).
    const auto h = [&](double lambda) {
        const double beta = 1.0 - lambda * k;
        return (1.0 - theta_hat) * beta * std::pow(lambda, -lambda * k) - m1;
    };
    const double lo = 1e-6, hi = 1e3;
    constexpr int kGrid = 400;
    std::optional<std::pair<double, double>> bracket;
    double a = lo, ha = h(lo);
    for (int i = 1; i <= kGrid && !bracket; ++i) {
        const double b = lo * std::pow(hi / lo, static_cast<double>(i) / kGrid);
        const double hb = h(b);
        if (ha == 0.0) bracket = {{a, a}};
        else if (std::signbit(ha) != std::signbit(hb)) bracket = {{a, b}};
        a = b;
        ha = hb;
    }
    if (!bracket) {
        std::ostringstream os;
        os << "mom_tempered_stable: moment equation has no sign change for lambda in [" << lo << ", "
           << hi << "] (m1 = " << m1 << ", m2 = " << m2 << ", theta = " << theta_hat << ")";
        throw RootError(os.str());
    }
    double lambda = bracket->first;
    if (bracket->first != bracket->second) {
        const auto r = numerics::find_root(h, bracket->first, bracket->second, 1e-10 * bracket->first);
        lambda = r.root;
        est.solver = {r.iterations, r.residual, r.converged};
    }
    est.param1 = lambda;
    est.param2 = 1.0 - lambda * k;
    if (!(est.param2 > 0.0 && est.param2 < 1.0)) {
        est.in_domain = false;
        est.diagnostic = "beta estimate outside (0, 1)";
    }
    return est;
}

MomEstimate mom_gamma(double m1, double m2, double theta_hat) {
    check_theta(theta_hat, "mom_gamma");
    MomEstimate est = named(Family::Gamma);
    const double d = spread(m1, m2, theta_hat);
    if (d == 0.0) throw DegenerateError("mom_gamma: m2 (1 - theta) - 2 m1^2 is zero");
    est.param1 = m1 * (1.0 - theta_hat * theta_hat) / d;
    est.param2 = m1 * est.param1 / (1.0 - theta_hat);
    if (m1 == 0.0) {
        est.in_domain = false;
        est.diagnostic = "degenerate: m1 is zero";
    } else if (!(est.param1 > 0.0 && est.param2 > 0.0)) {
        est.in_domain = false;
        est.diagnostic = "nonpositive estimate";
    }
    return est;
}

double mom_gamma_beta_as_printed(double m1, double m2, double theta_hat) {
    return m1 * (1.0 - theta_hat * theta_hat) / (m2 * (1.0 - theta_hat - 2.0 * m1 * m1));
}

MomEstimate mom_inverse_gaussian(double m1, double m2, double theta_hat) {
    check_theta(theta_hat, "mom_inverse_gaussian");
    MomEstimate est = named(Family::InverseGaussian);
    const double d = spread(m1, m2, theta_hat);
    const double radicand = d == 0.0 ? -1.0 : m1 * (1.0 - theta_hat * theta_hat) / d;
    if (!(radicand > 0.0)) {
        std::ostringstream os;
        os << "mom_inverse_gaussian: gamma^2 estimate " << radicand << " is not positive";
        throw DomainError(os.str());
    }
    est.param1 = std::sqrt(radicand);
    est.param2 = m1 * est.param1 / (1.0 - theta_hat);
    return est;
}

MomEstimate mom(Family family, double m1, double m2, double theta_hat) {
    switch (family) {
        case Family::TemperedStable: return mom_tempered_stable(m1, m2, theta_hat);
        case Family::Gamma: return mom_gamma(m1, m2, theta_hat);
        case Family::InverseGaussian: return mom_inverse_gaussian(m1, m2, theta_hat);
        default: break;
    }
    throw UnsupportedFamilyError("mom: no moment estimator for family " + to_string(family));
}

EstimationResult estimate(const std::vector<double>& series, Family family, bool with_intercept) {
    EstimationResult out;
    out.n = series.size();
    out.theta_hat = cls_theta(series, with_intercept);
    const auto [m1, m2] = residual_moments(series, out.theta_hat);
    out.m1_hat = m1;
    out.m2_hat = m2;
    const MomEstimate est = mom(family, m1, m2, out.theta_hat);
    out.family_params[est.name1] = est.param1;
    out.family_params[est.name2] = est.param2;
    out.solver = est.solver;
    out.in_domain = est.in_domain;
    out.diagnostic = est.diagnostic;
    return out;
}

// ---------------------------------------------------------------------------

ParamSummary summarize(const std::string& name, std::vector<double> values) {
    ParamSummary s;
    s.name = name;
    s.count = values.size();
    if (values.empty()) {
        s.mean = s.sd = s.q1 = s.median = s.q3 = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    std::sort(values.begin(), values.end());
    // Linear interpolation between order statistics.
    const auto q = [&values](double p) {
        const double h = p * static_cast<double>(values.size() - 1);
        const auto i = static_cast<std::size_t>(std::floor(h));
        const std::size_t j = std::min(i + 1, values.size() - 1);
        return values[i] + (h - static_cast<double>(i)) * (values[j] - values[i]);
    };
    s.q1 = q(0.25);
    s.median = q(0.5);
    s.q3 = q(0.75);
    return s;
}

StudyReport run_study(const StudyConfig& config, ExecutionPolicy policy) {
    if (config.replicates == 0) throw DomainError("run_study: replicates must be at least 1");
    const Family family = config.base.family();
    const ArSimulator sim(Linear1{config.theta}, config.base, config.burn_in, config.allow_invalid);
    const MomEstimate names = named(family);

    StudyReport report;
    report.config = config;
    report.surrogate_innovations = sim.uses_surrogate();
    report.replicates.resize(config.replicates);

    const auto one = [&](std::size_t r, bool inner_parallel) {
        ReplicateResult& res = report.replicates[r];
        res.replicate = r;
        res.theta_hat = res.param1_hat = res.param2_hat = std::numeric_limits<double>::quiet_NaN();
        try {
            const auto series = sim.simulate(config.length, numerics::RngStream(config.seed, r), inner_parallel);
            const EstimationResult est = estimate(series, family, config.with_intercept);
            res.theta_hat = est.theta_hat;
            res.param1_hat = est.family_params.at(names.name1);
            res.param2_hat = est.family_params.at(names.name2);
            res.converged = est.solver.converged;
            res.in_domain = est.in_domain;
            res.message = est.diagnostic;
        } catch (const std::exception& e) {
            res.converged = false;
            res.message = e.what();
        }
    };

    const auto n = static_cast<std::ptrdiff_t>(config.replicates);
    if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t r = 0; r < n; ++r) one(static_cast<std::size_t>(r), false);
    } else {
        for (std::ptrdiff_t r = 0; r < n; ++r) one(static_cast<std::size_t>(r), false);
    }

    std::vector<double> th, p1, p2;
    for (const auto& r : report.replicates) {
        if (!r.converged) {
            ++report.failures;
            continue;
        }
        th.push_back(r.theta_hat);
        p1.push_back(r.param1_hat);
        p2.push_back(r.param2_hat);
    }
    report.theta = summarize("theta", th);
    report.param1 = summarize(names.name1, p1);
    report.param2 = summarize(names.name2, p2);
    return report;
}

}  // namespace gidar
