#pragma once

#include "curvehedge/forward_curve.hpp"
#include "curvehedge/method.hpp"
#include "curvehedge/smith_wilson.hpp"
#include "curvehedge/yield_curve.hpp"

#include <optional>
#include <vector>

namespace curvehedge {

/// Liability discount curve: the (offset) market curve up to tau, glued to a
/// method-specific extension on (tau, T].
///
/// The discrete Smith-Wilson variant is the fitted interpolant on the whole of
/// [0, T]; it meets the market curve at its nodes only.
class ExtrapolatedCurve final : public YieldCurve {
public:
    /// Resolves the spec (calibrates alpha, fills default Smith-Wilson nodes) and builds the curve.
    ExtrapolatedCurve(ForwardCurve market, MethodSpec spec);

    /// The spec with every derived parameter filled in; re-extrapolating with it reproduces this curve.
    const MethodSpec& spec() const { return spec_; }
    MethodKind kind() const { return spec_.kind; }
    double tau() const { return spec_.tau; }
    const ForwardCurve& market() const { return market_; }
    /// Market curve plus the constant offset: the input of the extension.
    const ForwardCurve& base() const { return base_; }

    double horizon() const override { return spec_.horizon; }
    double discount(double t) const override;
    double zero_yield(double t) const override;
    double forward(double t) const override;
    std::vector<double> breakpoints() const override;

    /// t * zbar_t where it exists (NaN on a defective Smith-Wilson stretch).
    double integrated_forward(double t) const;

    /// z_tau and f_tau (left limit) of the offset market curve.
    double z_tau() const { return z_tau_; }
    double f_tau() const { return f_tau_; }

    /// Continuous Smith-Wilson multiplier at t (1 for t <= tau).
    double sw_factor(double t) const;
    /// Coefficient of Delta f_tau in the continuous Smith-Wilson variation at t > tau.
    double sw_forward_coefficient(double t) const;
    /// True when the continuous Smith-Wilson discount factor turns non-positive before T.
    bool defective() const { return defective_; }
    bool defective_at(double t) const;

    const std::optional<SwDiscreteFit>& sw_fit() const { return fit_; }

private:
    double extension_tz(double t) const;

    ForwardCurve market_;
    ForwardCurve base_;
    MethodSpec spec_;
    double z_tau_ = 0.0;
    double f_tau_ = 0.0;
    double tz_tau_ = 0.0;
    double m5_tail_ = 0.0;  // int_tau^kappa s z_s ds
    bool defective_ = false;
    std::optional<SwDiscreteFit> fit_;
};

ExtrapolatedCurve extrapolate(const ForwardCurve& z, const MethodSpec& spec);

struct ForwardSample {
    double value;
    bool defective;
};

/// fbar_t with a flag marking a non-positive Smith-Wilson denominator.
ForwardSample forward_of_extrapolated(const ExtrapolatedCurve& curve, double t);

}  // namespace curvehedge
