#pragma once

#include "curvehedge/cash_flow.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/forward_curve.hpp"
#include "curvehedge/method.hpp"
#include "curvehedge/variation.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace curvehedge {

enum class HedgeKind { perfect, first_order, infeasible };

std::string_view to_string(HedgeKind kind);

/// Present-value density of a hedge over [a, b]; may vary with t.
struct RateDensity {
    double a;
    double b;
    std::function<double(double)> rate;
    std::vector<double> breaks;  ///< interior kinks of `rate`
};

struct HedgeDiagnostics {
    double liability_value = 0.0;  ///< L*_T under the extrapolated curve
    double plan_value = 0.0;
    double leverage = 0.0;  ///< plan_value / liability_value
    /// Liability exposure to Delta z_tau that the plan matches (coefficient of tau Delta z_tau).
    double dz_tau_coefficient = 0.0;
    /// Liability exposure to Delta f_tau left unmatched by bonds (M4, continuous M6).
    double df_tau_coefficient = 0.0;
    std::string note;
};

/// Asset flow in present-value terms dA*: lumps plus (possibly non-constant) densities.
struct HedgePlan {
    HedgeKind kind = HedgeKind::first_order;
    MethodKind method = MethodKind::M1;
    double tau = 0.0;
    std::vector<Lump> lumps;
    std::vector<RateDensity> densities;
    HedgeDiagnostics diagnostics;

    /// Sum of lumps plus integral of densities.
    double total_value() const;
    /// Time points where densities start, end, or the plan has lumps.
    std::vector<double> support_breaks() const;
    /// Nominal amounts dA_t = dA*_t / D_t under the given curve, which must outlive the result.
    HedgePlan to_nominal(const YieldCurve& curve) const;
};

/// Solves the hedge equation for the method. Liabilities must lie strictly beyond tau.
HedgePlan hedge(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L);
HedgePlan hedge(const ExtrapolatedCurve& curve, const CashFlow& L);

/// int t Delta z_t dA*_t.
double plan_exposure(const HedgePlan& plan, const CurveShift& dz);
/// int t^2 (Delta z_t)^2 dA*_t.
double plan_second_exposure(const HedgePlan& plan, const CurveShift& dz);
/// P[z + scale * dz; A], from the present-value measure and D[z']/D[z] = exp(-scale t Delta z_t).
double plan_value_shifted(const HedgePlan& plan, const CurveShift& dz, double scale = 1.0);

/// P[z + scale dz; A] - P[z; A], summed from expm1 terms so that small changes keep their digits.
double plan_value_change(const HedgePlan& plan, const CurveShift& dz, double scale = 1.0);
/// Pbar[z'; L] - Pbar[z; L] from the two extrapolated curves, integrating D_t expm1(-(t zbar'_t - t zbar_t)).
double liability_value_change(const ExtrapolatedCurve& base, const ExtrapolatedCurve& shifted, const CashFlow& L);

/// |int t Delta z dA* - int t delta zbar dL*| without a kind check.
double first_order_residual(const HedgePlan& plan, const ExtrapolatedCurve& curve, const CashFlow& L,
                            const CurveShift& dz);
/// As above; rejects infeasible plans.
double verify_first_order(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                          const CurveShift& dz);

/// Hedge error of one shift by full revaluation: |(P[z+dz; A] - P[z; A]) - (Pbar[z+dz; L] - Pbar[z; L])|.
/// Equal to |P[z+dz; A] - Pbar[z+dz; L]| whenever the plan is worth Pbar[z; L], and meaningful for the
/// empty M1 plan, whose liability value sits in cash.
double revaluation_gap(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                       const CurveShift& dz, double scale = 1.0);
/// Maximum revaluation gap over the suite; the plan must be perfect.
double verify_perfect(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                      std::span<const CurveShift> shifts);

/// delta^2 P[z;A|dz] - delta^2 Pbar[z;L|dz] for the method's own plan.
double convexity_gap(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L, const CurveShift& dz);
double convexity_gap(const HedgePlan& plan, const ExtrapolatedCurve& curve, const CashFlow& L, const CurveShift& dz);

/// The same gap from second differences of the two revalued functionals.
VariationReport numeric_convexity_gap(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z,
                                      const CashFlow& L, const CurveShift& dz, const DifferencingOptions& opts = {});

inline constexpr double kDefaultFraLength = 1.0;

/// Borrow 1/eps at tau - eps, repay (1/eps) exp(int f) at tau.
struct FraContract {
    double tau = 0.0;
    double eps = kDefaultFraLength;
    double borrow_time = 0.0;
    double borrow_amount = 0.0;
    double repay_amount = 0.0;  ///< negative: paid at tau

    /// Nominal flows of one contract.
    CashFlow flows() const;
};

FraContract fra_replicate(const ForwardCurve& z, double tau, double eps = kDefaultFraLength);
/// P[z; F] for one contract.
double fra_value(const FraContract& fra, const YieldCurve& curve);
/// delta P[z;F|dz] = D_{tau-eps} (1/eps) int_{tau-eps}^{tau} Delta f_s ds.
double fra_variation(const FraContract& fra, const YieldCurve& curve, const CurveShift& dz);

struct InfeasibilityReport {
    MethodKind method = MethodKind::M4;
    double tau = 0.0;
    double bond_lump = 0.0;            ///< present value held at tau
    double forward_coefficient = 0.0;  ///< K: required exposure to Delta f_tau
    FraContract fra;
    double fra_units = 0.0;  ///< contracts shorted (negative) or bought to carry K
    HedgePlan bond_only;     ///< the tau lump alone
    HedgePlan with_overlay;  ///< tau lump plus the FRA overlay, present-value terms
};

/// Bond lump matching Delta z_tau, the unmatched Delta f_tau coefficient, and a finite-eps FRA overlay.
InfeasibilityReport infeasibility_decomposition(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                                                double eps = kDefaultFraLength);

}  // namespace curvehedge
