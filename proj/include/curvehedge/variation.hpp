#pragma once

#include "curvehedge/cash_flow.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/forward_curve.hpp"
#include "curvehedge/method.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace curvehedge {

/// A scalar functional of the market curve, F[z].
using CurveFunctional = std::function<double(const ForwardCurve&)>;

/// Analytic and finite-difference Gateaux variation of one functional along one shift.
struct VariationReport {
    int order = 1;
    double analytic = 0.0;  ///< NaN when no analytic value was supplied
    double numeric = 0.0;   ///< Richardson-extrapolated difference quotient
    double raw = 0.0;       ///< quotient at the smallest epsilon
    double error_estimate = 0.0;
    double residual = 0.0;  ///< |analytic - numeric|; NaN without an analytic value
    std::vector<double> eps_schedule;
    std::vector<double> quotients;
    /// |F[z + eps dz] - F[z] - eps * analytic| / eps along the schedule (order 1 only).
    std::vector<double> remainders;
    /// |delta F[z|dz] + delta F[z|-dz]|, when the antisymmetry probe was run.
    std::optional<double> antisymmetry_defect;
    bool nonlinear = false;

    bool has_analytic() const;
};

struct DifferencingOptions {
    double eps0 = 1e-2;
    int steps = 8;  ///< eps0, eps0/2, ..., eps0/2^(steps-1)
};

/// One-sided difference quotients of F along z + eps dz (order 1), or the
/// forward second difference (F[z+2e dz] - 2F[z+e dz] + F[z]) / e^2 (order 2),
/// over a halving epsilon schedule, Richardson-extrapolated.
VariationReport numeric_variation(const CurveFunctional& F, const ForwardCurve& z, const CurveShift& dz,
                                  int order = 1, const DifferencingOptions& opts = {});

/// The same quotients for a scalar function g(eps) along a ray, with g(0) the base value.
VariationReport ray_variation(const std::function<double(double)>& g, int order = 1,
                              const DifferencingOptions& opts = {});

/// numeric_variation plus residual and remainder sequence against `analytic`.
VariationReport compare_variation(const CurveFunctional& F, const ForwardCurve& z, const CurveShift& dz,
                                  double analytic, int order = 1, const DifferencingOptions& opts = {});

/// Richardson extrapolation of a sequence sampled at h, h/2, h/4, ... whose
/// error expands in integer powers of h. Returns {value, error estimate}.
std::pair<double, double> richardson(const std::vector<double>& samples);

/// delta D_t[y|dy] = -t dy_t D_t.
double variation_discount(const YieldCurve& y, const CurveShift& dy, double t);
/// delta P[y;C|dy] = -int t dy_t dC*_t.
double variation_pv(const YieldCurve& y, const CurveShift& dy, const CashFlow& flow);

/// Analytic first and second variation of zbar_t[z] along dz for one extrapolated curve.
///
/// The shift is applied to the offset market curve. Smith-Wilson alpha is held fixed.
class MethodVariation {
public:
    MethodVariation(const ExtrapolatedCurve& curve, const CurveShift& dz);

    double first(double t) const;
    double second(double t) const;
    /// Times where first() and second() may lose smoothness.
    std::vector<double> breakpoints() const;

private:
    const ExtrapolatedCurve& curve_;
    const CurveShift& dz_;
    double dz_tau_;
    double df_tau_;
    std::vector<double> eta1_;  // G^{-1} delta D at the Smith-Wilson nodes
    std::vector<double> eta2_;  // G^{-1} delta^2 D
    // G^{-1} (D_i expm1(-eps t_i dz_i)) per ray step; the schedule repeats for every t.
    mutable std::map<double, std::vector<double>> ray_cache_;
    const std::vector<double>& ray_solution(double e) const;
};

/// delta zbar_t[z|dz] (t <= tau returns dz_t outside the discrete Smith-Wilson variant).
double method_variation(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, double t);
double method_second_variation(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, double t);

/// Pbar[z;L] = P[zbar[z]; L] with the spec resolved at `z` (calibrated alpha and
/// Smith-Wilson nodes frozen so that shifted curves reuse them).
CurveFunctional liability_value_functional(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L);

/// int t * delta zbar_t dL*_t; the analytic variation of Pbar is its negative.
double liability_first_exposure(const ExtrapolatedCurve& curve, const CurveShift& dz, const CashFlow& L);

/// Analytic delta Pbar[z;L|dz] = -int t delta zbar_t dL*_t against the numeric oracle.
VariationReport method_variation_report(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz,
                                        const CashFlow& L, const DifferencingOptions& opts = {});

/// delta^2 Pbar[z;L|dz] = int (t^2 (delta zbar_t)^2 - t delta^2 zbar_t) dL*_t.
double second_order_pv(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, const CashFlow& L);
double second_order_pv(const ExtrapolatedCurve& curve, const CurveShift& dz, const CashFlow& L);

/// Absolute tolerance of the equality z_t = c in the clamp case split.
inline constexpr double kClampTolerance = 1e-12;

/// zbar_t = max(0, z_t - c).
double clamp_value(const ForwardCurve& z, double c, double t);
/// Pointwise variation of the clamp: 0 below c, dz_t above, one-sided at the kink.
double clamp_variation(double z_t, double dz_t, double c);
double clamp_variation(const ForwardCurve& z, const CurveShift& dz, double c, double t);
/// Analytic clamp variation against the numeric oracle, with the +/- direction probe.
VariationReport clamp_variation_report(const ForwardCurve& z, const CurveShift& dz, double c, double t,
                                       const DifferencingOptions& opts = {});

}  // namespace curvehedge
