#pragma once

#include "curvehedge/cash_flow.hpp"
#include "curvehedge/yield_curve.hpp"

#include <memory>

namespace curvehedge {

double discount_factor(const YieldCurve& curve, double t);
double zero_yield(const YieldCurve& curve, double t);
double forward_rate(const YieldCurve& curve, double t);

/// C_0 + int D_t dC_t.
double present_value(const YieldCurve& curve, const CashFlow& flow);

DiscountedFlow discounted_flow(std::shared_ptr<const YieldCurve> curve, const CashFlow& flow);

/// int t dC*_t.
double dollar_duration(const YieldCurve& curve, const CashFlow& flow);

// The ratios below throw NotWellDefinedError when the present value is zero.

/// int t dC*_t / C*_T.
double duration(const YieldCurve& curve, const CashFlow& flow);
/// int t^2 dC*_t / C*_T.
double convexity(const YieldCurve& curve, const CashFlow& flow);
/// int_tau^T (t - tau) dC*_t / C*_T.
double excess_duration(const YieldCurve& curve, const CashFlow& flow, double tau);

}  // namespace curvehedge
