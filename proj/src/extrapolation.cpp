#include "curvehedge/extrapolation.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace curvehedge {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

ExtrapolatedCurve::ExtrapolatedCurve(ForwardCurve market, MethodSpec spec)
    : market_(std::move(market)), base_(market_), spec_(std::move(spec)) {
    spec_.validate();
    const double tau = spec_.tau;
    const std::string name(to_string(spec_.kind));
    const double needed = spec_.kind == MethodKind::M5_SFSA ? spec_.kappa_value() : tau;
    if (market_.horizon() < needed)
        throw DomainError(name + ": market curve ends at " + std::to_string(market_.horizon()) +
                          " but the method needs it up to " + std::to_string(needed));
    if (spec_.offset != 0.0) base_ = market_.plus_constant(spec_.offset);

    z_tau_ = base_.zero_yield(tau);
    f_tau_ = base_.forward_left(tau);
    tz_tau_ = base_.integrated_forward(tau);

    switch (spec_.kind) {
        case MethodKind::M5_SFSA:
            m5_tail_ = base_.integrated_tz(tau, spec_.kappa_value());
            break;
        case MethodKind::M6_SW_continuous:
            if (!spec_.alpha) {
                spec_.alpha = sw_alpha_calibrate(base_, tau, spec_.kappa_value(), spec_.ufr_value(), *spec_.epsilon,
                                                 {spec_.alpha_min, spec_.alpha_max});
            }
            defective_ = sw_factor(spec_.horizon) <= 0.0;
            break;
        case MethodKind::M6_SW_discrete: {
            if (spec_.sw_nodes.empty()) {
                for (double t : base_.grid().nodes())
                    if (t > 0.0 && t <= tau) spec_.sw_nodes.push_back(t);
                if (spec_.sw_nodes.empty() || spec_.sw_nodes.back() != tau) spec_.sw_nodes.push_back(tau);
            }
            std::vector<double> prices;
            prices.reserve(spec_.sw_nodes.size());
            for (double t : spec_.sw_nodes) prices.push_back(base_.discount(t));
            fit_ = sw_fit_discrete(spec_.sw_nodes, prices, spec_.ufr_value(), spec_.alpha_value(), spec_.horizon);
            break;
        }
        default:
            break;
    }
}

double ExtrapolatedCurve::sw_factor(double t) const {
    if (spec_.kind != MethodKind::M6_SW_continuous || t <= spec_.tau) return 1.0;
    return sw_continuous_factor(f_tau_, spec_.ufr_value(), spec_.alpha_value(), t - spec_.tau);
}

double ExtrapolatedCurve::sw_forward_coefficient(double t) const {
    if (spec_.kind != MethodKind::M6_SW_continuous)
        throw PreconditionError("sw_forward_coefficient: continuous Smith-Wilson only");
    if (t <= spec_.tau) return 0.0;
    const double alpha = spec_.alpha_value();
    const double b = sw_factor(t);
    if (!(b > 0.0)) throw DefectError("Smith-Wilson denominator non-positive at t = " + std::to_string(t));
    return (-std::expm1(-alpha * (t - spec_.tau))) / (alpha * t) / b;
}

bool ExtrapolatedCurve::defective_at(double t) const {
    return spec_.kind == MethodKind::M6_SW_continuous && t > spec_.tau && sw_factor(t) <= 0.0;
}

double ExtrapolatedCurve::extension_tz(double t) const {
    const double tau = spec_.tau;
    switch (spec_.kind) {
        case MethodKind::M1:
            return spec_.ufr_value() * t;
        case MethodKind::M2:
            return z_tau_ * t;
        case MethodKind::M3:
            return tz_tau_ + (t - tau) * spec_.ufr_value();
        case MethodKind::M4:
            return tz_tau_ + (t - tau) * f_tau_;
        case MethodKind::M5_SFSA: {
            const double kappa = spec_.kappa_value();
            const double width = kappa - tau;
            const double ufr = spec_.ufr_value();
            if (t <= kappa) {
                return ((kappa - t) * base_.integrated_forward(t) + base_.integrated_tz(tau, t)) / width +
                       (t - tau) * (t - tau) / (2.0 * width) * ufr;
            }
            return m5_tail_ / width + (t - 0.5 * (tau + kappa)) * ufr;
        }
        case MethodKind::M6_SW_continuous: {
            const double b = sw_factor(t);
            if (!(b > 0.0)) return kNaN;
            return tz_tau_ + spec_.ufr_value() * (t - tau) - std::log(b);
        }
        case MethodKind::M6_SW_discrete:
            break;
    }
    return kNaN;
}

double ExtrapolatedCurve::integrated_forward(double t) const {
    check_time(t, "integrated_forward");
    if (fit_) {
        const double d = fit_->discount(t);
        return d > 0.0 ? -std::log(d) : kNaN;
    }
    if (t <= spec_.tau) return base_.integrated_forward(t);
    return extension_tz(t);
}

double ExtrapolatedCurve::discount(double t) const {
    check_time(t, "discount_factor");
    if (fit_) return fit_->discount(t);
    if (t <= spec_.tau) return base_.discount(t);
    if (spec_.kind == MethodKind::M6_SW_continuous)
        return std::exp(-tz_tau_ - spec_.ufr_value() * (t - spec_.tau)) * sw_factor(t);
    return std::exp(-extension_tz(t));
}

double ExtrapolatedCurve::zero_yield(double t) const {
    check_time(t, "zero_yield");
    if (fit_) return fit_->zero_yield(t);
    if (t <= spec_.tau) return base_.zero_yield(t);
    return extension_tz(t) / t;
}

double ExtrapolatedCurve::forward(double t) const {
    check_time(t, "forward_rate");
    if (fit_) return fit_->forward(t);
    const double tau = spec_.tau;
    if (t < tau) return base_.forward(t);
    switch (spec_.kind) {
        case MethodKind::M1:
        case MethodKind::M3:
            return spec_.ufr_value();
        case MethodKind::M2:
            return z_tau_;
        case MethodKind::M4:
            return f_tau_;
        case MethodKind::M5_SFSA: {
            const double kappa = spec_.kappa_value();
            if (t >= kappa) return spec_.ufr_value();
            return ((kappa - t) * base_.forward(t) + (t - tau) * spec_.ufr_value()) / (kappa - tau);
        }
        case MethodKind::M6_SW_continuous: {
            const double ufr = spec_.ufr_value();
            const double u = t - tau;
            return ufr - (ufr - f_tau_) * std::exp(-spec_.alpha_value() * u) / sw_factor(t);
        }
        case MethodKind::M6_SW_discrete:
            break;
    }
    return kNaN;
}

std::vector<double> ExtrapolatedCurve::breakpoints() const {
    if (fit_) return fit_->breakpoints();
    const double limit = spec_.kind == MethodKind::M5_SFSA ? spec_.kappa_value() : spec_.tau;
    std::vector<double> b;
    for (double t : base_.grid().nodes())
        if (t <= limit) b.push_back(t);
    b.push_back(spec_.tau);
    if (spec_.kappa && *spec_.kappa < spec_.horizon) b.push_back(*spec_.kappa);
    b.push_back(spec_.horizon);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

ExtrapolatedCurve extrapolate(const ForwardCurve& z, const MethodSpec& spec) { return ExtrapolatedCurve(z, spec); }

ForwardSample forward_of_extrapolated(const ExtrapolatedCurve& curve, double t) {
    return {curve.forward(t), curve.defective_at(t)};
}

}  // namespace curvehedge
