#include "curvehedge/variation.hpp"

#include "curvehedge/analytics.hpp"
#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace curvehedge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> eps_schedule(const DifferencingOptions& opts) {
    if (!(opts.eps0 > 0.0) || opts.steps < 2) throw DomainError("differencing: need eps0 > 0 and at least 2 steps");
    std::vector<double> eps(static_cast<std::size_t>(opts.steps));
    for (std::size_t k = 0; k < eps.size(); ++k) eps[k] = std::ldexp(opts.eps0, -static_cast<int>(k));
    return eps;
}

// Difference quotients of a scalar function of eps along the schedule.
template <class G>
std::vector<double> quotients_of(G&& g, const std::vector<double>& eps, int order) {
    const double g0 = g(0.0);
    if (!std::isfinite(g0)) throw EvaluationError("functional is not finite at the base curve");
    auto eval = [&g](double e) {
        const double v = g(e);
        if (!std::isfinite(v)) throw EvaluationError("functional is not finite at eps = " + std::to_string(e));
        return v;
    };
    std::vector<double> q;
    q.reserve(eps.size());
    for (double e : eps) {
        if (order == 1) {
            q.push_back((eval(e) - g0) / e);
        } else {
            q.push_back((eval(2.0 * e) - 2.0 * eval(e) + g0) / (e * e));
        }
    }
    return q;
}

template <class G>
VariationReport scalar_variation(G&& g, int order, const DifferencingOptions& opts) {
    if (order != 1 && order != 2) throw DomainError("variation order must be 1 or 2");
    VariationReport r;
    r.order = order;
    r.analytic = kNaN;
    r.residual = kNaN;
    r.eps_schedule = eps_schedule(opts);
    r.quotients = quotients_of(g, r.eps_schedule, order);
    r.raw = r.quotients.back();
    std::tie(r.numeric, r.error_estimate) = richardson(r.quotients);
    return r;
}

}  // namespace

VariationReport ray_variation(const std::function<double(double)>& g, int order, const DifferencingOptions& opts) {
    return scalar_variation(g, order, opts);
}

bool VariationReport::has_analytic() const { return !std::isnan(analytic); }

std::pair<double, double> richardson(const std::vector<double>& samples) {
    if (samples.empty()) throw DomainError("richardson: no samples");
    const std::size_t n = samples.size();
    // Neville tableau with ratio 2; the entry with the smallest error estimate wins.
    std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
    double best = samples[0];
    double err = std::numeric_limits<double>::infinity();
    t[0][0] = samples[0];
    for (std::size_t i = 1; i < n; ++i) {
        t[i][0] = samples[i];
        double factor = 1.0;
        for (std::size_t j = 1; j <= i; ++j) {
            factor *= 2.0;
            t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (factor - 1.0);
            const double e = std::max(std::abs(t[i][j] - t[i][j - 1]), std::abs(t[i][j] - t[i - 1][j - 1]));
            if (e <= err) {
                err = e;
                best = t[i][j];
            }
        }
        // Stop once the diagonal diverges: rounding has taken over.
        if (std::abs(t[i][i] - t[i - 1][i - 1]) >= 2.0 * err && err < std::numeric_limits<double>::infinity()) break;
    }
    return {best, err};
}

VariationReport numeric_variation(const CurveFunctional& F, const ForwardCurve& z, const CurveShift& dz, int order,
                                  const DifferencingOptions& opts) {
    return scalar_variation([&](double e) { return e == 0.0 ? F(z) : F(z.shifted(dz, e)); }, order, opts);
}

VariationReport compare_variation(const CurveFunctional& F, const ForwardCurve& z, const CurveShift& dz,
                                  double analytic, int order, const DifferencingOptions& opts) {
    VariationReport r = numeric_variation(F, z, dz, order, opts);
    r.analytic = analytic;
    r.residual = std::abs(analytic - r.numeric);
    if (order == 1)
        for (double q : r.quotients) r.remainders.push_back(std::abs(q - analytic));
    return r;
}

double variation_discount(const YieldCurve& y, const CurveShift& dy, double t) {
    return -t * dy.dz(t) * y.discount(t);
}

double variation_pv(const YieldCurve& y, const CurveShift& dy, const CashFlow& flow) {
    const auto nodes = dy.rate().grid().nodes();
    return -integrate_discounted(y, flow, [&dy](double t) { return t * dy.dz(t); },
                                 std::vector<double>(nodes.begin(), nodes.end()));
}

// ---------------------------------------------------------------------------

MethodVariation::MethodVariation(const ExtrapolatedCurve& curve, const CurveShift& dz)
    : curve_(curve), dz_(dz), dz_tau_(dz.dz(curve.tau())), df_tau_(dz.df_left(curve.tau())) {
    const double needed = curve.kind() == MethodKind::M5_SFSA ? curve.spec().kappa_value() : curve.tau();
    if (dz.horizon() < needed) throw DomainError("method_variation: shift does not cover the method's market range");
    if (const auto& fit = curve.sw_fit()) {
        const auto nodes = fit->nodes();
        const auto prices = fit->prices();
        std::vector<double> d1(nodes.size()), d2(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double a = nodes[i] * dz.dz(nodes[i]);
            d1[i] = -a * prices[i];
            d2[i] = a * a * prices[i];
        }
        eta1_ = fit->solve(d1);
        eta2_ = fit->solve(d2);
    }
}

double MethodVariation::first(double t) const {
    const MethodKind kind = curve_.kind();
    const double tau = curve_.tau();
    if (kind == MethodKind::M6_SW_discrete) {
        const SwDiscreteFit& fit = *curve_.sw_fit();
        const auto nodes = fit.nodes();
        double dd = 0.0;
        if (t == 0.0) {
            // zbar_0 = fbar_0 = -Dbar'(0)
            for (std::size_t i = 0; i < nodes.size(); ++i)
                dd += sw_kernel_ds(0.0, nodes[i], fit.ufr(), fit.alpha()) * eta1_[i];
            return -dd;
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) dd += sw_kernel(t, nodes[i], fit.ufr(), fit.alpha()) * eta1_[i];
        const double d = fit.discount(t);
        if (!(d > 0.0)) throw DefectError("Smith-Wilson discount factor non-positive at t = " + std::to_string(t));
        return -dd / (t * d);
    }
    if (t <= tau) return dz_.dz(t);
    switch (kind) {
        case MethodKind::M1:
            return 0.0;
        case MethodKind::M2:
            return dz_tau_;
        case MethodKind::M3:
            return tau / t * dz_tau_;
        case MethodKind::M4:
            return tau / t * dz_tau_ + (1.0 - tau / t) * df_tau_;
        case MethodKind::M5_SFSA: {
            const double kappa = curve_.spec().kappa_value();
            const double width = kappa - tau;
            if (t <= kappa) return (kappa - t) / width * dz_.dz(t) + dz_.integrated_tdz(tau, t) / (t * width);
            return dz_.integrated_tdz(tau, kappa) / (t * width);
        }
        case MethodKind::M6_SW_continuous:
            return tau / t * dz_tau_ + curve_.sw_forward_coefficient(t) * df_tau_;
        case MethodKind::M6_SW_discrete:
            break;
    }
    return kNaN;
}

double MethodVariation::second(double t) const {
    const MethodKind kind = curve_.kind();
    const double tau = curve_.tau();
    if (kind == MethodKind::M6_SW_continuous) {
        if (t <= tau) return 0.0;
        if (curve_.defective_at(t))
            throw DefectError("Smith-Wilson denominator non-positive at t = " + std::to_string(t));
        // Only -log B(f_tau + eps df_tau) / t is nonlinear in eps.
        const double ufr = curve_.spec().ufr_value();
        const double alpha = curve_.spec().alpha_value();
        const double f_tau = curve_.f_tau();
        const double u = t - tau;
        // B is affine in f_tau, so its increment along the ray is exact and log1p keeps the digits
        // that the second differences need.
        const double b0 = sw_continuous_factor(f_tau, ufr, alpha, u);
        const double slope = std::expm1(-alpha * u) / alpha;  // dB / df_tau
        auto g = [&](double e) { return -std::log1p(e * df_tau_ * slope / b0) / t; };
        return scalar_variation(g, 2, {}).numeric;
    }
    if (kind == MethodKind::M6_SW_discrete) {
        const SwDiscreteFit& fit = *curve_.sw_fit();
        const auto nodes = fit.nodes();
        std::vector<double> w(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            w[i] = t == 0.0 ? sw_kernel_ds(0.0, nodes[i], fit.ufr(), fit.alpha())
                            : sw_kernel(t, nodes[i], fit.ufr(), fit.alpha());
        const double base = t == 0.0 ? fit.discount_derivative(0.0) : fit.discount(t);
        // zbar_t(eps) - zbar_t(0) along the ray, with node prices D_i exp(-eps t_i dz_i) fed through
        // the fixed Gram solve. Only the increment is formed, so the second differences keep its digits.
        auto g = [&](double e) {
            const std::vector<double>& eta = ray_solution(e);
            double dv = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) dv += w[i] * eta[i];
            return t == 0.0 ? -dv : -std::log1p(dv / base) / t;
        };
        return scalar_variation(g, 2, {}).numeric;
    }
    return 0.0;  // M1..M5: zbar is affine in z beyond tau and the identity below
}

const std::vector<double>& MethodVariation::ray_solution(double e) const {
    auto it = ray_cache_.find(e);
    if (it != ray_cache_.end()) return it->second;
    const SwDiscreteFit& fit = *curve_.sw_fit();
    const auto nodes = fit.nodes();
    const auto prices = fit.prices();
    std::vector<double> rhs(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) rhs[i] = prices[i] * std::expm1(-e * nodes[i] * dz_.dz(nodes[i]));
    return ray_cache_.emplace(e, fit.solve(rhs)).first->second;
}

std::vector<double> MethodVariation::breakpoints() const {
    std::vector<double> b;
    const auto nodes = dz_.rate().grid().nodes();
    const double limit = curve_.kind() == MethodKind::M5_SFSA ? curve_.spec().kappa_value() : curve_.tau();
    for (double t : nodes)
        if (t <= limit || curve_.kind() == MethodKind::M6_SW_discrete) b.push_back(t);
    b.push_back(curve_.tau());
    if (curve_.spec().kappa) b.push_back(*curve_.spec().kappa);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double method_variation(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, double t) {
    const ExtrapolatedCurve curve(z, spec);
    return MethodVariation(curve, dz).first(t);
}

double method_second_variation(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, double t) {
    const ExtrapolatedCurve curve(z, spec);
    return MethodVariation(curve, dz).second(t);
}

CurveFunctional liability_value_functional(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L) {
    const MethodSpec resolved = ExtrapolatedCurve(z, spec).spec();
    return [resolved, L](const ForwardCurve& curve) { return present_value(ExtrapolatedCurve(curve, resolved), L); };
}

double liability_first_exposure(const ExtrapolatedCurve& curve, const CurveShift& dz, const CashFlow& L) {
    const MethodVariation mv(curve, dz);
    return integrate_discounted(curve, L, [&mv](double t) { return t * mv.first(t); }, mv.breakpoints());
}

VariationReport method_variation_report(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz,
                                        const CashFlow& L, const DifferencingOptions& opts) {
    const ExtrapolatedCurve curve(z, spec);
    const double analytic = -liability_first_exposure(curve, dz, L);
    return compare_variation(liability_value_functional(spec, z, L), z, dz, analytic, 1, opts);
}

double second_order_pv(const ExtrapolatedCurve& curve, const CurveShift& dz, const CashFlow& L) {
    const MethodVariation mv(curve, dz);
    return integrate_discounted(
        curve, L,
        [&mv](double t) {
            const double d1 = mv.first(t);
            return t * t * d1 * d1 - t * mv.second(t);
        },
        mv.breakpoints());
}

double second_order_pv(const MethodSpec& spec, const ForwardCurve& z, const CurveShift& dz, const CashFlow& L) {
    return second_order_pv(ExtrapolatedCurve(z, spec), dz, L);
}

// ---------------------------------------------------------------------------

double clamp_value(const ForwardCurve& z, double c, double t) { return std::max(0.0, z.zero_yield(t) - c); }

double clamp_variation(double z_t, double dz_t, double c) {
    if (std::abs(z_t - c) <= kClampTolerance) return dz_t > 0.0 ? dz_t : 0.0;
    return z_t < c ? 0.0 : dz_t;
}

double clamp_variation(const ForwardCurve& z, const CurveShift& dz, double c, double t) {
    return clamp_variation(z.zero_yield(t), dz.dz(t), c);
}

VariationReport clamp_variation_report(const ForwardCurve& z, const CurveShift& dz, double c, double t,
                                       const DifferencingOptions& opts) {
    const CurveFunctional F = [c, t](const ForwardCurve& y) { return clamp_value(y, c, t); };
    VariationReport r = compare_variation(F, z, dz, clamp_variation(z, dz, c, t), 1, opts);
    const CurveShift minus = dz.scaled(-1.0);
    const VariationReport back = numeric_variation(F, z, minus, 1, opts);
    const double defect = std::abs(r.numeric + back.numeric);
    r.antisymmetry_defect = defect;
    r.nonlinear = defect > 1e-10 * (std::abs(r.numeric) + std::abs(back.numeric)) + 1e-14;
    return r;
}

}  // namespace curvehedge
