#pragma once

#include "curvehedge/cash_flow.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/forward_curve.hpp"
#include "curvehedge/method.hpp"

#include <functional>
#include <optional>

namespace curvehedge {

/// S := -(dL*_T / d ufr) / L*_T, a duration with respect to the ultimate forward rate.
struct UfrSensitivityReport {
    MethodKind method = MethodKind::M3;
    double S = 0.0;
    std::optional<double> closed_form;
    std::optional<double> lower;
    std::optional<double> upper;
    double oracle = 0.0;        ///< -parameter_sensitivity / L*_T
    double rel_residual = 0.0;  ///< |S - oracle| / |S|, 0 for oracle-only methods
    double liability_value = 0.0;
    bool oracle_only = false;  ///< no closed form (M1, discrete M6)
};

/// theta -> zbar(theta), evaluated near the base parameter.
using CurveFamily = std::function<ExtrapolatedCurve(double)>;

/// dPbar/dtheta = -int t (d zbar_t / d theta) dL*_t, with the derivative of zbar by
/// central differences at h = 1e-6 (|theta| + 1) and one Richardson step.
double parameter_sensitivity(const CurveFamily& family, const CashFlow& L, double theta);

/// The method's curve as a function of its ultimate forward rate (other parameters resolved at z).
CurveFamily ufr_family(const MethodSpec& spec, const ForwardCurve& z);
/// The method's curve as a function of the constant offset c.
CurveFamily offset_family(const MethodSpec& spec, const ForwardCurve& z);
/// Continuous or discrete Smith-Wilson as a function of alpha.
CurveFamily alpha_family(const MethodSpec& spec, const ForwardCurve& z);

/// Closed-form S with the displayed bounds and the generic oracle.
/// M2 reads the ultimate forward rate as the constant level beyond tau. M4 has none and throws.
UfrSensitivityReport ufr_sensitivity(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L);

}  // namespace curvehedge
