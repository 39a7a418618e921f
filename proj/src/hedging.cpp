#include "curvehedge/hedging.hpp"

#include "curvehedge/analytics.hpp"
#include "curvehedge/errors.hpp"
#include "curvehedge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace curvehedge {

namespace {

std::vector<double> shift_nodes(const CurveShift& dz) {
    const auto n = dz.rate().grid().nodes();
    return {n.begin(), n.end()};
}

// int w(t) dA*_t; densities split at their own kinks plus `extra`.
template <class W>
double integrate_plan(const HedgePlan& plan, W&& w, std::span<const double> extra) {
    double total = 0.0;
    for (const auto& l : plan.lumps) total += w(l.t) * l.amount;
    for (const auto& d : plan.densities) {
        std::vector<double> breaks = d.breaks;
        breaks.insert(breaks.end(), extra.begin(), extra.end());
        total += integrate_piecewise([&](double t) { return w(t) * d.rate(t); }, d.a, d.b, breaks);
    }
    return total;
}

void check_liabilities(const CashFlow& L, double tau, std::string_view who) {
    if (L.empty()) throw PreconditionError(std::string(who) + ": empty liability flow");
    if (L.first_time() <= tau)
        throw PreconditionError(std::string(who) + ": liabilities must lie strictly beyond tau = " +
                                std::to_string(tau) + "; split off earlier flows first (mass at t = " +
                                std::to_string(L.first_time()) + ")");
}

std::vector<double> flow_breaks(const CashFlow& L) {
    std::vector<double> b;
    for (const auto& l : L.lumps()) b.push_back(l.t);
    for (const auto& d : L.densities()) {
        b.push_back(d.a);
        b.push_back(d.b);
    }
    return b;
}

void finish(HedgePlan& plan, double liability_value) {
    plan.diagnostics.liability_value = liability_value;
    plan.diagnostics.plan_value = plan.total_value();
    plan.diagnostics.leverage = plan.diagnostics.plan_value / liability_value;
}

}  // namespace

std::string_view to_string(HedgeKind kind) {
    switch (kind) {
        case HedgeKind::perfect:
            return "perfect";
        case HedgeKind::first_order:
            return "first_order";
        case HedgeKind::infeasible:
            return "infeasible";
    }
    return "?";
}

double HedgePlan::total_value() const {
    return integrate_plan(*this, [](double) { return 1.0; }, {});
}

std::vector<double> HedgePlan::support_breaks() const {
    std::vector<double> b;
    for (const auto& l : lumps) b.push_back(l.t);
    for (const auto& d : densities) {
        b.push_back(d.a);
        b.push_back(d.b);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

HedgePlan HedgePlan::to_nominal(const YieldCurve& curve) const {
    HedgePlan out = *this;
    for (auto& l : out.lumps) l.amount /= curve.discount(l.t);
    for (auto& d : out.densities) {
        auto rate = d.rate;
        d.rate = [rate, &curve](double t) { return rate(t) / curve.discount(t); };
    }
    return out;
}

HedgePlan hedge(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L) {
    return hedge(ExtrapolatedCurve(z, spec), L);
}

HedgePlan hedge(const ExtrapolatedCurve& curve_in, const CashFlow& L) {
    const double tau = curve_in.tau();
    check_liabilities(L, tau, "hedge");
    auto curve = std::make_shared<const ExtrapolatedCurve>(curve_in);
    auto lstar = std::make_shared<const DiscountedFlow>(curve, L);
    const double LT = lstar->total();
    if (!(LT > 0.0)) throw PreconditionError("hedge: liability present value must be positive");

    HedgePlan plan;
    plan.method = curve->kind();
    plan.tau = tau;
    const auto& spec = curve->spec();

    switch (curve->kind()) {
        case MethodKind::M1:
            plan.kind = HedgeKind::perfect;
            plan.diagnostics.note = "liability value does not depend on the market curve beyond tau";
            break;
        case MethodKind::M2: {
            const double dd = lstar->integrate([](double t) { return t; });
            plan.kind = HedgeKind::first_order;
            plan.lumps.push_back({tau, dd / tau});
            plan.diagnostics.dz_tau_coefficient = dd;
            plan.diagnostics.note = "zero-coupon bond at tau sized by dollar duration; leveraged";
            break;
        }
        case MethodKind::M3:
            plan.kind = HedgeKind::perfect;
            plan.lumps.push_back({tau, LT});
            plan.diagnostics.dz_tau_coefficient = tau * LT;
            break;
        case MethodKind::M5_SFSA: {
            const double kappa = spec.kappa_value();
            const double width = kappa - tau;
            plan.kind = HedgeKind::first_order;
            std::vector<double> kinks;
            for (double b : flow_breaks(L))
                if (b > tau && b < kappa) kinks.push_back(b);
            plan.densities.push_back(
                {tau, kappa,
                 [lstar, LT, kappa, width](double t) {
                     return (LT - lstar->cumulative(t)) / width + (kappa - t) / width * lstar->density(t);
                 },
                 kinks});
            // A lump exactly at kappa gets weight zero and is carried by the density.
            for (const auto& l : lstar->lumps())
                if (l.t > tau && l.t < kappa) plan.lumps.push_back({l.t, (kappa - l.t) / width * l.amount});
            plan.diagnostics.note = "bonds spread over (tau, kappa]";
            break;
        }
        case MethodKind::M4:
        case MethodKind::M6_SW_continuous: {
            plan.kind = HedgeKind::infeasible;
            plan.lumps.push_back({tau, LT});
            plan.diagnostics.dz_tau_coefficient = tau * LT;
            if (curve->kind() == MethodKind::M4) {
                plan.diagnostics.df_tau_coefficient = lstar->integrate([tau](double t) { return t - tau; });
            } else {
                plan.diagnostics.df_tau_coefficient =
                    lstar->integrate([&c = *curve](double t) { return t * c.sw_forward_coefficient(t); });
            }
            plan.diagnostics.note =
                "exposure to the forward rate at tau cannot be matched with zero-coupon bonds; see the FRA overlay";
            break;
        }
        case MethodKind::M6_SW_discrete: {
            // Pbar = int e^{-ufr t} dL + gamma . (D - e^{-ufr t_i}) with gamma = G^{-1} int w(t) dL_t.
            const SwDiscreteFit& fit = *curve->sw_fit();
            const auto nodes = fit.nodes();
            const auto prices = fit.prices();
            const double ufr = fit.ufr();
            const double alpha = fit.alpha();
            const std::vector<double> breaks(nodes.begin(), nodes.end());
            auto nominal = [&](const std::function<double(double)>& w) {
                double s = 0.0;
                for (const auto& l : L.lumps()) s += w(l.t) * l.amount;
                for (const auto& d : L.densities()) s += d.rate * integrate_piecewise(w, d.a, d.b, breaks);
                return s;
            };
            std::vector<double> wbar(nodes.size());
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double ti = nodes[i];
                wbar[i] = nominal([=](double t) { return sw_kernel(t, ti, ufr, alpha); });
            }
            const std::vector<double> gamma = fit.solve(wbar);
            double cash = nominal([ufr](double t) { return std::exp(-ufr * t); });
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                cash -= gamma[i] * std::exp(-ufr * nodes[i]);
                plan.lumps.push_back({nodes[i], gamma[i] * prices[i]});
            }
            plan.lumps.insert(plan.lumps.begin(), Lump{0.0, cash});
            plan.kind = HedgeKind::perfect;
            plan.diagnostics.note = "node bonds replicate the interpolant; cash at t = 0 carries the prior mean";
            break;
        }
    }
    finish(plan, LT);
    return plan;
}

double plan_exposure(const HedgePlan& plan, const CurveShift& dz) {
    return integrate_plan(plan, [&dz](double t) { return dz.integrated(t); }, shift_nodes(dz));
}

double plan_second_exposure(const HedgePlan& plan, const CurveShift& dz) {
    return integrate_plan(
        plan,
        [&dz](double t) {
            const double a = dz.integrated(t);
            return a * a;
        },
        shift_nodes(dz));
}

double plan_value_shifted(const HedgePlan& plan, const CurveShift& dz, double scale) {
    return integrate_plan(plan, [&dz, scale](double t) { return std::exp(-scale * dz.integrated(t)); },
                          shift_nodes(dz));
}

double plan_value_change(const HedgePlan& plan, const CurveShift& dz, double scale) {
    return integrate_plan(plan, [&dz, scale](double t) { return std::expm1(-scale * dz.integrated(t)); },
                          shift_nodes(dz));
}

double liability_value_change(const ExtrapolatedCurve& base, const ExtrapolatedCurve& shifted, const CashFlow& L) {
    const std::vector<double> breaks = shifted.breakpoints();
    // The exponent is a difference of two separately rounded integrals; below about 1e-15 of the
    // liability value the integrand is rounding noise and further subdivision cannot help.
    QuadratureOptions opts;
    opts.abs_tol = 1e-15 * std::abs(present_value(base, L));
    return integrate_discounted(
        base, L,
        [&](double t) {
            if (t == 0.0) return 0.0;
            return std::expm1(-(shifted.integrated_forward(t) - base.integrated_forward(t)));
        },
        breaks, opts);
}

double first_order_residual(const HedgePlan& plan, const ExtrapolatedCurve& curve, const CashFlow& L,
                            const CurveShift& dz) {
    return std::abs(plan_exposure(plan, dz) - liability_first_exposure(curve, dz, L));
}

double verify_first_order(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                          const CurveShift& dz) {
    if (plan.kind == HedgeKind::infeasible)
        throw PreconditionError("verify_first_order: plan is infeasible and has no first-order guarantee");
    return first_order_residual(plan, ExtrapolatedCurve(z, spec), L, dz);
}

double revaluation_gap(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                       const CurveShift& dz, double scale) {
    const ExtrapolatedCurve base(z, spec);
    const ExtrapolatedCurve moved(z.shifted(dz, scale), base.spec());
    return std::abs(plan_value_change(plan, dz, scale) - liability_value_change(base, moved, L));
}

double verify_perfect(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                      std::span<const CurveShift> shifts) {
    if (plan.kind != HedgeKind::perfect)
        throw PreconditionError(std::string("verify_perfect: plan kind is ") + std::string(to_string(plan.kind)) +
                                ", not perfect");
    double worst = 0.0;
    for (const auto& dz : shifts) worst = std::max(worst, revaluation_gap(plan, spec, z, L, dz));
    return worst;
}

double convexity_gap(const HedgePlan& plan, const ExtrapolatedCurve& curve, const CashFlow& L, const CurveShift& dz) {
    if (plan.kind == HedgeKind::infeasible) throw PreconditionError("convexity_gap: plan is infeasible");
    return plan_second_exposure(plan, dz) - second_order_pv(curve, dz, L);
}

double convexity_gap(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L, const CurveShift& dz) {
    const ExtrapolatedCurve curve(z, spec);
    return convexity_gap(hedge(curve, L), curve, L, dz);
}

VariationReport numeric_convexity_gap(const HedgePlan& plan, const MethodSpec& spec, const ForwardCurve& z,
                                      const CashFlow& L, const CurveShift& dz, const DifferencingOptions& opts) {
    if (plan.kind == HedgeKind::infeasible) throw PreconditionError("convexity_gap: plan is infeasible");
    const MethodSpec resolved = ExtrapolatedCurve(z, spec).spec();
    auto g = [&](double e) {
        const ForwardCurve shifted = e == 0.0 ? z : z.shifted(dz, e);
        return plan_value_shifted(plan, dz, e) - present_value(ExtrapolatedCurve(shifted, resolved), L);
    };
    return ray_variation(g, 2, opts);
}

// ---------------------------------------------------------------------------

CashFlow FraContract::flows() const {
    return CashFlow({{borrow_time, borrow_amount}, {tau, repay_amount}}, {});
}

FraContract fra_replicate(const ForwardCurve& z, double tau, double eps) {
    if (!(eps > 0.0 && eps < tau)) throw DomainError("fra_replicate: need 0 < eps < tau");
    if (tau > z.horizon()) throw DomainError("fra_replicate: tau beyond the curve horizon");
    FraContract f;
    f.tau = tau;
    f.eps = eps;
    f.borrow_time = tau - eps;
    f.borrow_amount = 1.0 / eps;
    f.repay_amount = -std::exp(z.integrated_forward(tau) - z.integrated_forward(tau - eps)) / eps;
    return f;
}

double fra_value(const FraContract& fra, const YieldCurve& curve) {
    return fra.borrow_amount * curve.discount(fra.borrow_time) + fra.repay_amount * curve.discount(fra.tau);
}

double fra_variation(const FraContract& fra, const YieldCurve& curve, const CurveShift& dz) {
    const double avg_df = (dz.integrated(fra.tau) - dz.integrated(fra.borrow_time)) / fra.eps;
    return curve.discount(fra.borrow_time) * avg_df;
}

InfeasibilityReport infeasibility_decomposition(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L,
                                                double eps) {
    if (spec.kind != MethodKind::M4 && spec.kind != MethodKind::M6_SW_continuous)
        throw PreconditionError("infeasibility_decomposition: only M4 and continuous M6 need a forward overlay");
    const ExtrapolatedCurve curve(z, spec);
    InfeasibilityReport r;
    r.method = spec.kind;
    r.tau = spec.tau;
    r.bond_only = hedge(curve, L);
    r.bond_lump = r.bond_only.lumps.front().amount;
    r.forward_coefficient = r.bond_only.diagnostics.df_tau_coefficient;
    r.fra = fra_replicate(curve.base(), spec.tau, eps);
    const double d_borrow = curve.base().discount(r.fra.borrow_time);
    // One contract adds D_{tau-eps} * avg(Delta f) to delta P; the hedge needs -K of it.
    r.fra_units = -r.forward_coefficient / d_borrow;
    const double K = r.forward_coefficient;
    r.with_overlay = r.bond_only;
    r.with_overlay.kind = HedgeKind::first_order;
    r.with_overlay.lumps = {{r.fra.borrow_time, -K / eps}, {spec.tau, r.bond_lump + K / eps}};
    r.with_overlay.diagnostics.df_tau_coefficient = 0.0;
    r.with_overlay.diagnostics.note = "bond at tau plus a short FRA over [tau - eps, tau]; exact only when "
                                      "Delta f is constant on that interval";
    finish(r.with_overlay, r.bond_only.diagnostics.liability_value);
    return r;
}

}  // namespace curvehedge
