#include "curvehedge/analytics.hpp"

#include "curvehedge/errors.hpp"

#include <string>

namespace curvehedge {

double discount_factor(const YieldCurve& curve, double t) { return curve.discount(t); }
double zero_yield(const YieldCurve& curve, double t) { return curve.zero_yield(t); }
double forward_rate(const YieldCurve& curve, double t) { return curve.forward(t); }

double present_value(const YieldCurve& curve, const CashFlow& flow) {
    return integrate_discounted(curve, flow, [](double) { return 1.0; });
}

DiscountedFlow discounted_flow(std::shared_ptr<const YieldCurve> curve, const CashFlow& flow) {
    return DiscountedFlow(std::move(curve), flow);
}

double dollar_duration(const YieldCurve& curve, const CashFlow& flow) {
    return integrate_discounted(curve, flow, [](double t) { return t; });
}

namespace {
double nonzero_pv(const YieldCurve& curve, const CashFlow& flow, const char* what) {
    const double pv = present_value(curve, flow);
    if (pv == 0.0) throw NotWellDefinedError(std::string(what) + ": cash flow has zero present value");
    return pv;
}
}  // namespace

double duration(const YieldCurve& curve, const CashFlow& flow) {
    const double pv = nonzero_pv(curve, flow, "duration");
    return dollar_duration(curve, flow) / pv;
}

double convexity(const YieldCurve& curve, const CashFlow& flow) {
    const double pv = nonzero_pv(curve, flow, "convexity");
    return integrate_discounted(curve, flow, [](double t) { return t * t; }) / pv;
}

double excess_duration(const YieldCurve& curve, const CashFlow& flow, double tau) {
    if (!(tau >= 0.0 && tau <= curve.horizon())) throw DomainError("excess_duration: tau outside [0, T]");
    const double pv = nonzero_pv(curve, flow, "excess_duration");
    const double breaks[] = {tau};
    return integrate_discounted(curve, flow, [tau](double t) { return t > tau ? t - tau : 0.0; }, breaks) / pv;
}

}  // namespace curvehedge
