#include "gidar/lt_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "gidar/errors.hpp"
#include "gidar/roots.hpp"

namespace gidar {

using numerics::Complex;

LtSampler::LtSampler(LtTransform transform, double atom, SamplerOptions options)
    : transform_(std::move(transform)), atom_(atom), options_(options) {
    if (!(atom_ >= 0.0 && atom_ <= 1.0)) throw DomainError("LtSampler: atom must lie in [0, 1]");
    if (atom_ == 1.0) {
        // Point mass at zero; no continuous part to tabulate.
        xs_ = {0.0};
        cdf_ = {1.0};
        surv_ = {0.0};
        return;
    }
    double centre = transform_.scale_hint;
    if (!(centre > 0.0) || !std::isfinite(centre)) centre = 1.0;

    const double step = std::pow(2.0, 0.25);
    std::deque<double> xs, fs, ss;
    xs.push_back(centre);
    fs.push_back(cdf(centre));
    ss.push_back(survival(centre));

    while (fs.front() > options_.tail_target && xs.front() > options_.x_floor) {
        const double x = std::max(xs.front() / step, options_.x_floor);
        xs.push_front(x);
        fs.push_front(cdf(x));
        ss.push_front(survival(x));
    }
    const int max_up = 4 * options_.max_doublings + 400;
    for (int k = 0; ss.back() > options_.tail_target && k < max_up; ++k) {
        const double x = xs.back() * step;
        xs.push_back(x);
        fs.push_back(cdf(x));
        ss.push_back(survival(x));
    }
    xs_.assign(xs.begin(), xs.end());
    cdf_.assign(fs.begin(), fs.end());
    surv_.assign(ss.begin(), ss.end());

    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (cdf_[i] < cdf_[i - 1] - options_.monotone_tol ||
            surv_[i] > surv_[i - 1] + options_.monotone_tol) {
            std::ostringstream os;
            os << "LtSampler: inverted CDF is not monotone near x = " << xs_[i] << " (F = " << cdf_[i - 1]
               << " -> " << cdf_[i] << ")";
            throw InvalidLawError(os.str());
        }
    }
}

double LtSampler::cdf(double x) const {
    const auto& lt = transform_.lt;
    const auto f = [&lt](Complex s) { return lt(s) / s; };
    return numerics::talbot_sum(f, x, options_.nodes, 0.0);
}

double LtSampler::survival(double x) const {
    return numerics::talbot_sum(transform_.survival_lt, x, options_.nodes, transform_.singularity);
}

double LtSampler::root_on(bool lower, double target, double lo, double hi, double h_lo,
                          double h_hi) const {
    const auto h = [&](double x) { return lower ? cdf(x) - target : target - survival(x); };
    const double tol = 1e-10 * std::min(1.0, lo);
    return numerics::find_root(h, lo, hi, h_lo, h_hi, tol).root;
}

double LtSampler::quantile(double u, double v) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: probability must lie in (0, 1)");
    const bool lower = u <= 0.5;
    if (lower) {
        if (u <= cdf_.front()) {
            if (xs_.front() <= options_.x_floor) return options_.x_floor;
            return root_on(true, u, options_.x_floor, xs_.front(), cdf(options_.x_floor) - u,
                           cdf_.front() - u);
        }
        const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) throw RootError("quantile: lower-tail target above the table");
        const std::size_t j = static_cast<std::size_t>(it - cdf_.begin());
        return root_on(true, u, xs_[j - 1], xs_[j], cdf_[j - 1] - u, cdf_[j] - u);
    }
    // Survival is nonincreasing: find the first node with S <= v.
    const auto it = std::find_if(surv_.begin(), surv_.end(), [v](double s) { return s <= v; });
    if (it == surv_.end()) {
        double lo = xs_.back();
        double s_lo = surv_.back();
        for (int k = 0; k < options_.max_doublings; ++k) {
            const double hi = 2.0 * lo;
            const double s_hi = survival(hi);
            if (s_hi <= v) return root_on(false, v, lo, hi, v - s_lo, v - s_hi);
            lo = hi;
            s_lo = s_hi;
        }
        std::ostringstream os;
        os << "quantile: upper tail probability " << v << " not bracketed after "
           << options_.max_doublings << " doublings beyond x = " << xs_.back();
        throw RootError(os.str());
    }
    const std::size_t j = static_cast<std::size_t>(it - surv_.begin());
    if (j == 0) return xs_.front();
    return root_on(false, v, xs_[j - 1], xs_[j], v - surv_[j - 1], v - surv_[j]);
}

double LtSampler::draw(const numerics::RngStream& stream, std::uint64_t position) const {
    const double u = stream.uniform_at(position);
    if (u < atom_) return 0.0;
    const double v = stream.complement_at(position);
    const double scale = 1.0 - atom_;
    const double uc = (u - atom_) / scale;
    const double vc = v / scale;
    if (!(uc > 0.0)) return options_.x_floor;
    return quantile(uc, std::min(vc, 1.0));
}

void LtSampler::sample_serial(const numerics::RngStream& stream, std::uint64_t offset,
                              std::span<double> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = draw(stream, offset + i);
}

void LtSampler::sample_parallel(const numerics::RngStream& stream, std::uint64_t offset,
                                std::span<double> out) const {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = draw(stream, offset + static_cast<std::uint64_t>(i));
        } catch (const std::exception& e) {
#pragma omp critical(gidar_sampler_error)
            {
                if (!failed) message = e.what();
                failed = true;
            }
        }
    }
    if (failed) throw RootError(message);
}

std::vector<double> LtSampler::sample(std::size_t n, const numerics::RngStream& stream,
                                      bool parallel) const {
    std::vector<double> out(n);
    if (parallel) {
        sample_parallel(stream, 0, out);
    } else {
        sample_serial(stream, 0, out);
    }
    return out;
}

}  // namespace gidar
