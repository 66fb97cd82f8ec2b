#include "gidar/gid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "gidar/errors.hpp"
#include "gidar/roots.hpp"

namespace gidar {

double TauberianAsymptote::operator()(double x) const { return prefactor * std::pow(x, exponent); }

namespace {

RealPole locate_pole(const LaplaceExponent& g) {
    const double b = g.branch_point();
    if (b >= 0.0) return {};
    if (!(1.0 + g.value_at_branch_point() < 0.0)) return {};
    // g is increasing on (b, 0] with g(0) = 0; walk toward b until 1 + g < 0.
    double lo = 0.5 * b;
    double h_lo = 1.0 + g.eval(lo);
    for (int k = 0; h_lo >= 0.0 && k < 1100; ++k) {
        lo = b + 0.5 * (lo - b);
        if (lo == b) break;
        h_lo = 1.0 + g.eval(lo);
    }
    if (h_lo >= 0.0) return {};
    const auto h = [&g](double s) { return 1.0 + g.eval(s); };
    const auto r = numerics::find_root(h, lo, 0.0, h_lo, 1.0, 1e-15 * std::abs(b));
    return {true, r.root};
}

}  // namespace

GidDistribution::GidDistribution(LaplaceExponent exponent)
    : exponent_(std::move(exponent)), pole_(locate_pole(exponent_)) {}

double GidDistribution::lt(double s) const {
    if (!(s >= 0.0)) throw DomainError("gid lt: s must be nonnegative");
    return 1.0 / (1.0 + exponent_.eval(s));
}

Complex GidDistribution::lt(Complex s) const { return 1.0 / (1.0 + exponent_.eval(s)); }

double GidDistribution::geometric_sum_lt(double theta, double s) const {
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("geometric_sum_lt: theta must lie in (0, 1]");
    if (!(s >= 0.0)) throw DomainError("geometric_sum_lt: s must be nonnegative");
    return 1.0 / (1.0 + exponent_.eval(s) / theta);
}

Moments GidDistribution::moments() const {
    const double d1 = exponent_.deriv_at_zero(1);
    const double d2 = exponent_.deriv_at_zero(2);
    return {d1, 2.0 * d1 * d1 - d2};
}

TauberianAsymptote GidDistribution::tauberian_asymptote() const {
    double theta = 1.0;
    const LaplaceExponent* g = &exponent_;
    while (const auto* sc = std::get_if<Scaled>(&g->node())) {
        theta *= sc->theta;
        g = sc->inner.get();
    }
    if (const auto* ts = std::get_if<TemperedStable>(&g->node())) {
        return {1.0 / (theta * std::tgamma(ts->beta)), ts->beta - 1.0};
    }
    if (const auto* ig = std::get_if<InverseGaussian>(&g->node())) {
        return {1.0 / (theta * ig->delta * std::sqrt(2.0 * std::numbers::pi)), -0.5};
    }
    throw UnsupportedFamilyError("tauberian_asymptote: no small-x power law for " + exponent_.describe());
}

RealPole GidDistribution::pole() const { return pole_; }

double GidDistribution::singularity_abscissa() const {
    return pole_.exists ? pole_.location : std::min(0.0, exponent_.branch_point());
}

numerics::InversionResult GidDistribution::cdf_inversion(double x) const {
    if (!(x > 0.0)) throw DomainError("cdf_numeric: x must be positive");
    const auto f = [this](Complex s) { return lt(s) / s; };
    return numerics::invert_laplace(f, x);
}

numerics::InversionResult GidDistribution::pdf_inversion(double x) const {
    if (!(x >= kPdfFloor)) {
        std::ostringstream os;
        os << "pdf_numeric: x = " << x << " is below the evaluation floor " << kPdfFloor;
        throw DomainError(os.str());
    }
    numerics::InversionOptions opt;
    opt.shift = singularity_abscissa();
    const auto f = [this](Complex s) { return lt(s); };
    return numerics::invert_laplace(f, x, opt);
}

double GidDistribution::cdf_numeric(double x) const {
    const auto r = cdf_inversion(x);
    if (r.error_estimate > 1e-6) {
        std::ostringstream os;
        os << "cdf_numeric: inversion error estimate " << r.error_estimate << " at x = " << x;
        throw InversionError(os.str());
    }
    return std::clamp(r.value, 0.0, 1.0);
}

double GidDistribution::survival_numeric(double x) const {
    if (!(x > 0.0)) throw DomainError("survival_numeric: x must be positive");
    const auto t = transform();
    numerics::InversionOptions opt;
    opt.shift = t.singularity;
    const auto r = numerics::invert_laplace(t.survival_lt, x, opt);
    if (r.error_estimate > 1e-6) {
        std::ostringstream os;
        os << "survival_numeric: inversion error estimate " << r.error_estimate << " at x = " << x;
        throw InversionError(os.str());
    }
    return std::clamp(r.value, 0.0, 1.0);
}

double GidDistribution::pdf_numeric(double x) const {
    const auto r = pdf_inversion(x);
    if (r.error_estimate > 1e-6 * std::abs(r.value) + 1e-12) {
        std::ostringstream os;
        os << "pdf_numeric: inversion error estimate " << r.error_estimate << " at x = " << x;
        throw InversionError(os.str());
    }
    return std::max(r.value, 0.0);
}

LtTransform GidDistribution::transform() const {
    const LaplaceExponent g = exponent_;
    double slope = 0.0;
    try {
        slope = g.deriv_at_zero(1);
    } catch (const DomainError&) {
        slope = std::numeric_limits<double>::infinity();
    }
    LtTransform t;
    t.lt = [g](Complex s) { return 1.0 / (1.0 + g.eval(s)); };
    t.survival_lt = [g, slope](Complex s) {
        if (s == Complex(0.0, 0.0)) return Complex(slope, 0.0);
        const Complex gs = g.eval(s);
        return gs / (s * (1.0 + gs));
    };
    t.singularity = singularity_abscissa();
    t.scale_hint = std::isfinite(slope) ? slope : 1.0;
    return t;
}

LtSampler GidDistribution::sampler(SamplerOptions options) const {
    return LtSampler(transform(), 0.0, options);
}

std::vector<double> GidDistribution::sample(std::size_t n, std::uint64_t seed) const {
    return sample(n, numerics::RngStream(seed, 0));
}

std::vector<double> GidDistribution::sample(std::size_t n, const numerics::RngStream& stream) const {
    if (n == 0) throw DomainError("sample: n must be at least 1");
    return sampler().sample(n, stream);
}

}  // namespace gidar
