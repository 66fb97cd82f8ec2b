#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gidar/gid.hpp"
#include "gidar/laplace_exponent.hpp"
#include "gidar/lt_sampler.hpp"
#include "gidar/rng.hpp"

namespace gidar {

enum class InnovationKind {
    GeometricScale,  ///< LT 1 / (1 + theta g(s)); random-coefficient models
    Ratio,           ///< LT (1 + g(theta s)) / (1 + g(s)); linear AR(1)
};

/// Residue term weight * exp(location * x) of a family-specific pdf.
struct PoleInfo {
    bool exists = false;
    double location = 0.0;  ///< zero of 1 + theta g(s) in the original s-plane
    double residue_weight = 0.0;
};

enum class PoleTerm { Auto, ForceInclude, ForceExclude };

/// Which closed form to evaluate. Stated is the expression as commonly
/// published; Audited is the one that agrees with numerical inversion.
enum class PdfForm { Audited, Stated };

struct ValidityReport {
    bool valid = true;
    std::optional<double> first_violation_s;
    std::string reason;
};

/// Atom-plus-continuous-part stand-in for a ratio law that is not a proper
/// distribution: P(0) = atom, otherwise gid with exponent scale * g. Its
/// first two moments equal the formal moments of the ratio transform.
struct RatioSurrogate {
    double atom;
    double scale;
};

class InnovationLaw {
public:
    /// theta in (0, 1]; theta = 1 is the marginal law itself.
    static InnovationLaw geometric_scale(double theta, const LaplaceExponent& base);
    /// theta in [0, 1].
    static InnovationLaw ratio(double theta, const LaplaceExponent& base);

    InnovationKind kind() const noexcept { return kind_; }
    double theta() const noexcept { return theta_; }
    const LaplaceExponent& base() const noexcept { return base_; }

    double lt(double s) const;
    Complex lt(Complex s) const;

    /// From the closed-form derivatives of g at zero.
    Moments moments() const;

    /// P(eps = 0): lim lt(s) as s -> inf. Zero for the geometric-scale kind.
    double atom_mass() const;

    /// Grid check on [1e-3, 1e3] that lt is nonincreasing and that its first
    /// three finite-difference derivatives alternate in sign.
    ValidityReport validity_check() const;

    RatioSurrogate ratio_surrogate() const;

    // Integral-form densities of the geometric-scale kind.
    PoleInfo pole_tempered_stable(PdfForm form = PdfForm::Audited) const;
    PoleInfo pole_gamma(PdfForm form = PdfForm::Audited) const;
    PoleInfo pole_inverse_gaussian(PdfForm form = PdfForm::Audited) const;

    double pdf_tempered_stable(double x, PoleTerm pole = PoleTerm::Auto,
                               PdfForm form = PdfForm::Audited) const;
    double pdf_gamma(double x, PoleTerm pole = PoleTerm::Auto, PdfForm form = PdfForm::Audited) const;
    double pdf_inverse_gaussian(double x, PoleTerm pole = PoleTerm::Auto,
                                PdfForm form = PdfForm::Audited) const;
    /// Dispatches on the base family.
    double pdf_formula(double x) const;

    /// Numerical inversion of lt (the reference for the closed forms above).
    double pdf_numeric(double x) const;

    /// Sampler for this law. For an invalid ratio law, throws InvalidLawError
    /// unless allow_invalid is set, in which case the surrogate is used.
    LtSampler sampler(bool allow_invalid = false) const;

    std::vector<double> sample(std::size_t n, const numerics::RngStream& stream,
                               bool allow_invalid = false) const;

private:
    InnovationLaw(InnovationKind kind, double theta, LaplaceExponent base);
    GidDistribution scaled_gid() const;
    LtTransform ratio_continuous_transform(double atom) const;

    InnovationKind kind_;
    double theta_;
    LaplaceExponent base_;
};

}  // namespace gidar
