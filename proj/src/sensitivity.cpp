#include "curvehedge/sensitivity.hpp"

#include "curvehedge/analytics.hpp"
#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace curvehedge {

double parameter_sensitivity(const CurveFamily& family, const CashFlow& L, double theta) {
    const double h = 1e-6 * (std::abs(theta) + 1.0);
    const ExtrapolatedCurve base = family(theta);
    const ExtrapolatedCurve up1 = family(theta + h), dn1 = family(theta - h);
    const ExtrapolatedCurve up2 = family(theta + 0.5 * h), dn2 = family(theta - 0.5 * h);
    // d(t zbar_t)/d theta = -d log D_t / d theta.
    auto logd = [](const ExtrapolatedCurve& c, double t) { return std::log(c.discount(t)); };
    auto weight = [&](double t) {
        if (t == 0.0) return 0.0;
        const double q1 = (logd(dn1, t) - logd(up1, t)) / (2.0 * h);
        const double q2 = (logd(dn2, t) - logd(up2, t)) / h;
        const double v = (4.0 * q2 - q1) / 3.0;
        if (!std::isfinite(v))
            throw EvaluationError("parameter_sensitivity: curve family not finite near theta = " +
                                  std::to_string(theta) + " at t = " + std::to_string(t));
        return v;
    };
    std::vector<double> breaks;
    for (const ExtrapolatedCurve* c : {&up1, &dn1, &up2, &dn2}) {
        const auto b = c->breakpoints();
        breaks.insert(breaks.end(), b.begin(), b.end());
    }
    return -integrate_discounted(base, L, weight, breaks);
}

namespace {

MethodSpec resolved_spec(const MethodSpec& spec, const ForwardCurve& z) { return ExtrapolatedCurve(z, spec).spec(); }

}  // namespace

CurveFamily ufr_family(const MethodSpec& spec, const ForwardCurve& z) {
    MethodSpec s = resolved_spec(spec, z);
    if (s.kind == MethodKind::M4) throw DomainError("M4 has no ultimate forward rate");
    if (s.kind == MethodKind::M2) {
        // The constant level beyond tau plays the role of the ultimate rate.
        s.kind = MethodKind::M1;
    }
    return [z, s](double theta) {
        MethodSpec t = s;
        t.ufr = theta;
        return ExtrapolatedCurve(z, t);
    };
}

CurveFamily offset_family(const MethodSpec& spec, const ForwardCurve& z) {
    const MethodSpec s = resolved_spec(spec, z);
    return [z, s](double theta) {
        MethodSpec t = s;
        t.offset = theta;
        return ExtrapolatedCurve(z, t);
    };
}

CurveFamily alpha_family(const MethodSpec& spec, const ForwardCurve& z) {
    if (!spec.is_smith_wilson()) throw DomainError("alpha_family: Smith-Wilson methods only");
    const MethodSpec s = resolved_spec(spec, z);
    return [z, s](double theta) {
        MethodSpec t = s;
        t.alpha = theta;
        return ExtrapolatedCurve(z, t);
    };
}

UfrSensitivityReport ufr_sensitivity(const MethodSpec& spec, const ForwardCurve& z, const CashFlow& L) {
    if (spec.kind == MethodKind::M4) throw DomainError("M4 has no ultimate forward rate");
    auto curve = std::make_shared<const ExtrapolatedCurve>(z, spec);
    const double tau = curve->tau();
    if (L.empty() || L.first_time() <= tau)
        throw PreconditionError("ufr_sensitivity: liabilities must lie strictly beyond tau");
    const DiscountedFlow lstar(curve, L);
    const double LT = lstar.total();
    if (!(LT > 0.0)) throw PreconditionError("ufr_sensitivity: liability present value must be positive");

    UfrSensitivityReport r;
    r.method = spec.kind;
    r.liability_value = LT;
    const MethodSpec& s = curve->spec();
    const double excdur_tau = lstar.integrate([tau](double t) { return std::max(t - tau, 0.0); }) / LT;

    switch (s.kind) {
        case MethodKind::M2:
            r.closed_form = lstar.integrate([](double t) { return t; }) / LT;
            break;
        case MethodKind::M3:
            r.closed_form = excdur_tau;
            break;
        case MethodKind::M5_SFSA: {
            const double kappa = s.kappa_value();
            const double width = kappa - tau;
            r.closed_form = lstar.integrate([=](double t) {
                                if (t <= tau) return 0.0;
                                if (t <= kappa) return (t - tau) * (t - tau) / (2.0 * width);
                                return t - 0.5 * (tau + kappa);
                            }) /
                            LT;
            const double excdur_kappa = lstar.integrate([kappa](double t) { return std::max(t - kappa, 0.0); }) / LT;
            const double beyond_kappa = LT - lstar.cumulative(kappa);
            r.upper = 0.5 * (excdur_tau + excdur_kappa);
            r.lower = width * beyond_kappa / (2.0 * LT) + excdur_kappa;
            break;
        }
        case MethodKind::M6_SW_continuous: {
            // M3 curves at ufr and ufr + alpha share D_tau; only their ratio enters.
            const double alpha = s.alpha_value();
            MethodSpec m3 = s;
            m3.kind = MethodKind::M3;
            m3.alpha.reset();
            auto c0 = std::make_shared<const ExtrapolatedCurve>(z, m3);
            const DiscountedFlow l0(c0, L);
            const double damped = l0.integrate([=](double t) {
                const double u = std::max(t - tau, 0.0);
                return u == 0.0 ? 0.0 : -std::expm1(-alpha * u) / alpha;
            });
            const double excdur0 = l0.integrate([tau](double t) { return std::max(t - tau, 0.0); });
            r.closed_form = excdur_tau - damped / LT;
            r.lower = excdur_tau - excdur0 / LT;
            r.upper = excdur_tau;
            break;
        }
        case MethodKind::M1:
        case MethodKind::M6_SW_discrete:
            r.oracle_only = true;
            break;
        case MethodKind::M4:
            break;
    }

    const double theta0 = s.kind == MethodKind::M2 ? curve->z_tau() : s.ufr_value();
    r.oracle = -parameter_sensitivity(ufr_family(s, z), L, theta0) / LT;
    r.S = r.closed_form ? *r.closed_form : r.oracle;
    r.rel_residual = r.oracle_only ? 0.0 : std::abs(r.S - r.oracle) / std::max(std::abs(r.S), 1e-300);
    return r;
}

}  // namespace curvehedge
