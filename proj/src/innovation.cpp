#include "gidar/innovation.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <variant>

#include "gidar/errors.hpp"
#include "gidar/quadrature.hpp"

namespace gidar {

namespace {

constexpr double kPi = std::numbers::pi;

double branch_integral(const numerics::RealFunction& f, double scale, const char* who) {
    const auto r = numerics::quad_semi_infinite_result(f, 1e-10, scale);
    if (!r.converged && r.abs_error > 1e-8 * std::abs(r.value)) {
        std::ostringstream os;
        os << who << ": branch-cut quadrature stopped at relative error "
           << r.abs_error / std::abs(r.value);
        throw QuadratureError(os.str());
    }
    return r.value;
}

bool include_pole(PoleTerm mode, bool exists) {
    switch (mode) {
        case PoleTerm::ForceInclude: return true;
        case PoleTerm::ForceExclude: return false;
        case PoleTerm::Auto: break;
    }
    return exists;
}

void warn_if_negative(double value, double x, const char* who) {
    if (value < -1e-8) {
        std::clog << "warning: " << who << " is negative (" << value << ") at x = " << x << "\n";
    }
}

}  // namespace

InnovationLaw::InnovationLaw(InnovationKind kind, double theta, LaplaceExponent base)
    : kind_(kind), theta_(theta), base_(std::move(base)) {}

InnovationLaw InnovationLaw::geometric_scale(double theta, const LaplaceExponent& base) {
    if (!(theta > 0.0 && theta <= 1.0)) {
        throw DomainError("geometric_scale innovation: theta must lie in (0, 1]");
    }
    return InnovationLaw(InnovationKind::GeometricScale, theta, base);
}

InnovationLaw InnovationLaw::ratio(double theta, const LaplaceExponent& base) {
    // Negative theta would need E exp(|theta| s Y) for every s, which does not
    // exist for these marginals.
    if (!(theta >= 0.0 && theta <= 1.0)) {
        throw DomainError("ratio innovation: theta must lie in [0, 1]");
    }
    return InnovationLaw(InnovationKind::Ratio, theta, base);
}

GidDistribution InnovationLaw::scaled_gid() const {
    return GidDistribution(LaplaceExponent::scaled(theta_, base_));
}

double InnovationLaw::lt(double s) const {
    if (!(s >= 0.0)) throw DomainError("innovation lt: s must be nonnegative");
    if (kind_ == InnovationKind::GeometricScale) return 1.0 / (1.0 + theta_ * base_.eval(s));
    return (1.0 + base_.eval(theta_ * s)) / (1.0 + base_.eval(s));
}

Complex InnovationLaw::lt(Complex s) const {
    if (kind_ == InnovationKind::GeometricScale) return 1.0 / (1.0 + theta_ * base_.eval(s));
    return (1.0 + base_.eval(theta_ * s)) / (1.0 + base_.eval(s));
}

Moments InnovationLaw::moments() const {
    const double d1 = base_.deriv_at_zero(1);
    const double d2 = base_.deriv_at_zero(2);
    const double t = theta_;
    if (kind_ == InnovationKind::GeometricScale) {
        return {t * d1, 2.0 * t * t * d1 * d1 - t * d2};
    }
    return {(1.0 - t) * d1, (t * t - 1.0) * d2 + 2.0 * (1.0 - t) * d1 * d1};
}

double InnovationLaw::atom_mass() const {
    if (kind_ == InnovationKind::GeometricScale) return 0.0;
    if (theta_ == 0.0) return 0.0;
    if (theta_ == 1.0) return 1.0;
    return std::pow(theta_, base_.tail_index());
}

ValidityReport InnovationLaw::validity_check() const {
    ValidityReport rep;
    if (kind_ == InnovationKind::GeometricScale || theta_ == 1.0 || theta_ == 0.0) return rep;

    constexpr int kPoints = 241;
    const double lo = std::log(1e-3);
    const double hi = std::log(1e3);
    const auto violation = [&rep](double s, std::string why) {
        rep.valid = false;
        rep.first_violation_s = s;
        rep.reason = std::move(why);
        return rep;
    };
    double prev = lt(0.0);
    for (int i = 0; i < kPoints; ++i) {
        const double s = std::exp(lo + (hi - lo) * i / (kPoints - 1));
        const double r0 = lt(s);
        if (r0 > prev + 1e-12) return violation(s, "transform increases");
        prev = r0;
        const double h = 0.05 * s;
        const double rp = lt(s + h), rm = lt(s - h);
        const double rp2 = lt(s + 2 * h), rm2 = lt(s - 2 * h);
        const double d1 = (rp - rm) / (2 * h);
        const double d2 = (rp - 2 * r0 + rm) / (h * h);
        const double d3 = (rp2 - 2 * rp + 2 * rm - rm2) / (2 * h * h * h);
        const double tol = 1e-9 * std::abs(r0);
        if (d1 > tol / s) return violation(s, "first derivative positive");
        if (d2 < -tol / (s * s)) return violation(s, "second derivative negative");
        if (d3 > tol / (s * s * s)) return violation(s, "third derivative positive");
    }
    return rep;
}

RatioSurrogate InnovationLaw::ratio_surrogate() const {
    const double a = base_.deriv_at_zero(1);
    const double b = -base_.deriv_at_zero(2);
    const double scale = 1.0 + theta_ * b / (2.0 * a * a);
    return {1.0 - (1.0 - theta_) / scale, scale};
}

// ---------------------------------------------------------------------------
// Closed-form densities
// ---------------------------------------------------------------------------

PoleInfo InnovationLaw::pole_tempered_stable(PdfForm form) const {
    const auto* p = std::get_if<TemperedStable>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pole_tempered_stable: base is " + base_.describe());
    const double lam_b = std::pow(p->lambda, p->beta);
    const double q = lam_b - 1.0 / theta_;
    PoleInfo info;
    if (!(q > 0.0)) return info;
    const double s0 = form == PdfForm::Audited ? std::pow(q, 1.0 / p->beta) : std::pow(q, p->beta - 1.0);
    info.exists = true;
    info.location = s0 - p->lambda;
    info.residue_weight = 1.0 / (theta_ * p->beta * std::pow(s0, p->beta - 1.0));
    return info;
}

PoleInfo InnovationLaw::pole_gamma(PdfForm form) const {
    const auto* p = std::get_if<GammaExponent>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pole_gamma: base is " + base_.describe());
    const double c = p->alpha * theta_;
    PoleInfo info;
    info.exists = true;
    info.location = p->beta_rate * std::expm1(-1.0 / c);
    const double shifted = info.location + p->beta_rate;
    info.residue_weight = form == PdfForm::Audited ? shifted / c : std::pow(shifted / p->beta_rate, c);
    return info;
}

PoleInfo InnovationLaw::pole_inverse_gaussian(PdfForm form) const {
    const auto* p = std::get_if<InverseGaussian>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pole_inverse_gaussian: base is " + base_.describe());
    const double tdg = theta_ * p->delta * p->gamma;
    const double a = 1.0 - 1.0 / tdg;
    const double g2 = p->gamma * p->gamma;
    PoleInfo info;
    if (form == PdfForm::Audited && !(a > 0.0)) return info;
    info.exists = true;
    info.location = 0.5 * g2 * (a * a - 1.0);
    info.residue_weight = std::sqrt(std::max(0.0, 2.0 * info.location + g2)) / (theta_ * p->delta);
    return info;
}

double InnovationLaw::pdf_tempered_stable(double x, PoleTerm pole, PdfForm form) const {
    if (kind_ != InnovationKind::GeometricScale) {
        throw UnsupportedFamilyError("pdf_tempered_stable: needs the geometric-scale kind");
    }
    const auto* p = std::get_if<TemperedStable>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pdf_tempered_stable: base is " + base_.describe());
    if (!(x > 0.0)) throw DomainError("pdf_tempered_stable: x must be positive");

    const double beta = p->beta;
    const double lam_b = std::pow(p->lambda, beta);
    const double cb = std::cos(kPi * beta);
    const double sb = std::sin(kPi * beta);
    const double t = theta_;
    // |1 + theta (y^beta e^{i pi beta} - lambda^beta)|^2 as a sum of squares.
    const auto integrand = [=](double y) {
        const double yb = std::pow(y, beta);
        const double re = 1.0 + t * (yb * cb - lam_b);
        const double im = t * yb * sb;
        return std::exp(-x * y) * t * yb * sb / (re * re + im * im);
    };
    const double branch = branch_integral(integrand, 1.0 / x, "pdf_tempered_stable") / kPi;
    double value = std::exp(-p->lambda * x) * branch;
    const PoleInfo info = pole_tempered_stable(form);
    if (include_pole(pole, info.exists)) {
        if (!info.exists) {
            throw DomainError("pdf_tempered_stable: no real pole for these parameters");
        }
        value += info.residue_weight * std::exp(info.location * x);
    }
    if (form == PdfForm::Audited) warn_if_negative(value, x, "pdf_tempered_stable");
    return value;
}

double InnovationLaw::pdf_gamma(double x, PoleTerm pole, PdfForm form) const {
    if (kind_ != InnovationKind::GeometricScale) {
        throw UnsupportedFamilyError("pdf_gamma: needs the geometric-scale kind");
    }
    const auto* p = std::get_if<GammaExponent>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pdf_gamma: base is " + base_.describe());
    if (!(x > 0.0)) throw DomainError("pdf_gamma: x must be positive");

    const double c = p->alpha * theta_;
    const double rate = p->beta_rate;
    const auto integrand = [=](double y) {
        const double l = std::log(y / rate);
        const double re = 1.0 + c * l;
        const double im = kPi * c;
        return c * std::exp(-x * y) / (re * re + im * im);
    };
    const double branch = std::exp(-rate * x) * branch_integral(integrand, 1.0 / x, "pdf_gamma");
    double value = form == PdfForm::Audited ? branch : -branch;
    const PoleInfo info = pole_gamma(form);
    if (include_pole(pole, info.exists)) value += info.residue_weight * std::exp(info.location * x);
    if (form == PdfForm::Audited) warn_if_negative(value, x, "pdf_gamma");
    return value;
}

double InnovationLaw::pdf_inverse_gaussian(double x, PoleTerm pole, PdfForm form) const {
    if (kind_ != InnovationKind::GeometricScale) {
        throw UnsupportedFamilyError("pdf_inverse_gaussian: needs the geometric-scale kind");
    }
    const auto* p = std::get_if<InverseGaussian>(&base_.node());
    if (!p) throw UnsupportedFamilyError("pdf_inverse_gaussian: base is " + base_.describe());
    if (!(x > 0.0)) throw DomainError("pdf_inverse_gaussian: x must be positive");

    const double t = theta_;
    const double d = p->delta;
    const double g = p->gamma;
    const double g2 = g * g;
    double value = 0.0;
    if (form == PdfForm::Audited) {
        // Cut variable w = 1 + 2 s / gamma^2 on w = -y.
        const double a = 1.0 - t * d * g;
        const auto integrand = [=](double y) {
            return t * d * g * std::sqrt(y) * std::exp(-0.5 * g2 * x * y) /
                   (a * a + t * t * d * d * g2 * y);
        };
        value = g2 / (2.0 * kPi) * std::exp(-0.5 * g2 * x) *
                branch_integral(integrand, 2.0 / (g2 * x), "pdf_inverse_gaussian");
    } else {
        const auto integrand = [=](double y) {
            const double den =
                1.0 - 2.0 * t * d * g + t * t * d * d * (y + g2 - 2.0 * g * std::sqrt(y) * std::cos(t));
            return t * d * std::sqrt(y) * std::exp(-2.0 * x * y / g2) / den;
        };
        value = g2 * std::exp(-x) / (2.0 * kPi) *
                branch_integral(integrand, g2 / (2.0 * x), "pdf_inverse_gaussian (stated)");
    }
    const PoleInfo info = pole_inverse_gaussian(form);
    if (include_pole(pole, info.exists)) {
        if (!info.exists) {
            throw DomainError("pdf_inverse_gaussian: no real pole for these parameters");
        }
        value += info.residue_weight * std::exp(info.location * x);
    }
    if (form == PdfForm::Audited) warn_if_negative(value, x, "pdf_inverse_gaussian");
    return value;
}

double InnovationLaw::pdf_formula(double x) const {
    switch (base_.family()) {
        case Family::TemperedStable: return pdf_tempered_stable(x);
        case Family::Gamma: return pdf_gamma(x);
        case Family::InverseGaussian: return pdf_inverse_gaussian(x);
        default: break;
    }
    throw UnsupportedFamilyError("pdf_formula: no integral form for " + base_.describe());
}

double InnovationLaw::pdf_numeric(double x) const {
    if (kind_ == InnovationKind::GeometricScale) return scaled_gid().pdf_numeric(x);
    if (!(x >= kPdfFloor)) throw DomainError("pdf_numeric: x below the evaluation floor");
    const double atom = atom_mass();
    if (atom >= 1.0) return 0.0;
    numerics::InversionOptions opt;
    opt.shift = GidDistribution(base_).singularity_abscissa();
    opt.estimate_error = false;
    const auto f = [this, atom](Complex s) { return lt(s) - atom; };
    return numerics::invert_laplace(f, x, opt).value;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

LtTransform InnovationLaw::ratio_continuous_transform(double atom) const {
    const LaplaceExponent g = base_;
    const double t = theta_;
    const double mass = 1.0 - atom;
    double slope = std::numeric_limits<double>::infinity();
    try {
        slope = g.deriv_at_zero(1);
    } catch (const DomainError&) {
    }
    LtTransform out;
    out.lt = [g, t, atom, mass](Complex s) {
        return ((1.0 + g.eval(t * s)) / (1.0 + g.eval(s)) - atom) / mass;
    };
    out.survival_lt = [g, t, mass, slope](Complex s) {
        if (s == Complex(0.0, 0.0)) return Complex((1.0 - t) * slope / mass, 0.0);
        const Complex gs = g.eval(s);
        return (gs - g.eval(t * s)) / ((1.0 + gs) * s * mass);
    };
    out.singularity = GidDistribution(base_).singularity_abscissa();
    out.scale_hint = std::isfinite(slope) ? (1.0 - t) * slope / mass : 1.0;
    return out;
}

LtSampler InnovationLaw::sampler(bool allow_invalid) const {
    if (kind_ == InnovationKind::GeometricScale) return scaled_gid().sampler();
    if (theta_ == 1.0) return LtSampler(LtTransform{}, 1.0);
    if (theta_ == 0.0) return GidDistribution(base_).sampler();
    const ValidityReport rep = validity_check();
    if (rep.valid) {
        const double atom = atom_mass();
        return LtSampler(ratio_continuous_transform(atom), atom);
    }
    if (!allow_invalid) {
        std::ostringstream os;
        os << "ratio innovation for " << base_.describe() << " with theta = " << theta_
           << " is not a distribution (" << rep.reason << " at s = " << *rep.first_violation_s << ")";
        throw InvalidLawError(os.str());
    }
    const RatioSurrogate sur = ratio_surrogate();
    const GidDistribution cont(LaplaceExponent::scaled(sur.scale, base_));
    return LtSampler(cont.transform(), sur.atom);
}

std::vector<double> InnovationLaw::sample(std::size_t n, const numerics::RngStream& stream,
                                          bool allow_invalid) const {
    if (n == 0) throw DomainError("sample: n must be at least 1");
    return sampler(allow_invalid).sample(n, stream);
}

}  // namespace gidar
