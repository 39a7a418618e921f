#include "curvehedge/cash_flow.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace curvehedge {

CashFlow::CashFlow(std::vector<Lump> lumps, std::vector<Density> densities) {
    std::sort(lumps.begin(), lumps.end(), [](const Lump& x, const Lump& y) { return x.t < y.t; });
    for (const auto& l : lumps) {
        if (!std::isfinite(l.t) || l.t < 0.0 || !std::isfinite(l.amount))
            throw DomainError("CashFlow: lump time must be finite and >= 0, amount finite");
        if (!lumps_.empty() && lumps_.back().t == l.t)
            lumps_.back().amount += l.amount;
        else
            lumps_.push_back(l);
    }
    std::sort(densities.begin(), densities.end(), [](const Density& x, const Density& y) { return x.a < y.a; });
    for (const auto& d : densities) {
        if (!std::isfinite(d.a) || !std::isfinite(d.b) || d.a < 0.0 || !(d.b > d.a) || !std::isfinite(d.rate))
            throw DomainError("CashFlow: density segment needs 0 <= a < b and a finite rate");
        if (!densities_.empty() && d.a < densities_.back().b)
            throw DomainError("CashFlow: density segments overlap at t = " + std::to_string(d.a));
        densities_.push_back(d);
    }
}

CashFlow CashFlow::lump(double t, double amount) { return CashFlow({{t, amount}}, {}); }

double CashFlow::first_time() const {
    double t = std::numeric_limits<double>::infinity();
    if (!lumps_.empty()) t = lumps_.front().t;
    if (!densities_.empty()) t = std::min(t, densities_.front().a);
    return t;
}

double CashFlow::last_time() const {
    double t = -std::numeric_limits<double>::infinity();
    if (!lumps_.empty()) t = lumps_.back().t;
    if (!densities_.empty()) t = std::max(t, densities_.back().b);
    return t;
}

CashFlow CashFlow::operator+(const CashFlow& other) const {
    std::vector<Lump> lumps(lumps_);
    lumps.insert(lumps.end(), other.lumps_.begin(), other.lumps_.end());
    // Overlapping densities are cut into pieces with summed rates.
    std::vector<double> cuts;
    for (const auto* src : {&densities_, &other.densities_})
        for (const auto& d : *src) {
            cuts.push_back(d.a);
            cuts.push_back(d.b);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Density> dens;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double rate = 0.0;
        bool covered = false;
        for (const auto* src : {&densities_, &other.densities_})
            for (const auto& d : *src)
                if (d.a <= mid && mid <= d.b) {
                    rate += d.rate;
                    covered = true;
                }
        if (covered) dens.push_back({cuts[i], cuts[i + 1], rate});
    }
    return CashFlow(std::move(lumps), std::move(dens));
}

CashFlow CashFlow::scaled(double factor) const {
    CashFlow out = *this;
    for (auto& l : out.lumps_) l.amount *= factor;
    for (auto& d : out.densities_) d.rate *= factor;
    return out;
}

namespace {

void check_flow_in_horizon(const YieldCurve& curve, const CashFlow& flow) {
    if (!flow.empty() && flow.last_time() > curve.horizon())
        throw DomainError("cash flow extends to t = " + std::to_string(flow.last_time()) + " beyond horizon " +
                          std::to_string(curve.horizon()));
}

}  // namespace

double integrate_discounted(const YieldCurve& curve, const CashFlow& flow, const Weight& weight,
                            std::span<const double> extra_breaks, const QuadratureOptions& opts) {
    check_flow_in_horizon(curve, flow);
    double total = 0.0;
    for (const auto& l : flow.lumps()) {
        const double w = weight(l.t);
        if (w != 0.0 && l.amount != 0.0) total += w * curve.discount(l.t) * l.amount;
    }
    if (flow.densities().empty()) return total;
    std::vector<double> breaks = curve.breakpoints();
    breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
    for (const auto& d : flow.densities()) {
        const double rate = d.rate;
        total += integrate_piecewise([&](double s) { return weight(s) * curve.discount(s) * rate; }, d.a, d.b,
                                     breaks, opts);
    }
    return total;
}

DiscountedFlow::DiscountedFlow(std::shared_ptr<const YieldCurve> curve, CashFlow source)
    : curve_(std::move(curve)), source_(std::move(source)) {
    if (!curve_) throw PreconditionError("DiscountedFlow: null curve");
    check_flow_in_horizon(*curve_, source_);
    for (const auto& l : source_.lumps()) lumps_.push_back({l.t, curve_->discount(l.t) * l.amount});
    total_ = integrate([](double) { return 1.0; });
}

double DiscountedFlow::density(double t) const {
    for (const auto& d : source_.densities())
        if (t >= d.a && t <= d.b) return curve_->discount(t) * d.rate;
    return 0.0;
}

double DiscountedFlow::cumulative(double t) const {
    double total = 0.0;
    for (const auto& l : lumps_)
        if (l.t <= t) total += l.amount;
    const std::vector<double> breaks = curve_->breakpoints();
    for (const auto& d : source_.densities()) {
        if (d.a >= t) break;
        const double hi = std::min(t, d.b);
        const double rate = d.rate;
        total += integrate_piecewise([&](double s) { return curve_->discount(s) * rate; }, d.a, hi, breaks);
    }
    return total;
}

double DiscountedFlow::integrate(const Weight& weight, std::span<const double> extra_breaks) const {
    return integrate_discounted(*curve_, source_, weight, extra_breaks);
}

}  // namespace curvehedge
