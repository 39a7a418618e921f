#include "curvehedge/forward_curve.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvehedge {

PiecewiseLinearRate::PiecewiseLinearRate(TimeGrid grid, std::vector<double> start, std::vector<double> end)
    : grid_(std::move(grid)), start_(std::move(start)), end_(std::move(end)) {
    const std::size_t segments = grid_.size() - 1;
    if (start_.size() != segments || end_.size() != segments)
        throw DomainError("PiecewiseLinearRate: need one start and end value per segment");
    cum_.assign(grid_.size(), 0.0);
    cum2_.assign(grid_.size(), 0.0);
    for (std::size_t i = 0; i < segments; ++i) {
        if (!std::isfinite(start_[i]) || !std::isfinite(end_[i]))
            throw DomainError("PiecewiseLinearRate: non-finite value on segment " + std::to_string(i));
        const double h = grid_[i + 1] - grid_[i];
        cum_[i + 1] = cum_[i] + 0.5 * h * (start_[i] + end_[i]);
        cum2_[i + 1] = cum2_[i] + cum_[i] * h + h * h * (2.0 * start_[i] + end_[i]) / 6.0;
    }
}

PiecewiseLinearRate PiecewiseLinearRate::from_nodal(TimeGrid grid, std::span<const double> values) {
    if (values.size() != grid.size()) throw DomainError("PiecewiseLinearRate: one value per node required");
    std::vector<double> start(values.begin(), values.end() - 1);
    std::vector<double> end(values.begin() + 1, values.end());
    return PiecewiseLinearRate(std::move(grid), std::move(start), std::move(end));
}

double PiecewiseLinearRate::segment_value(std::size_t i, double t) const {
    const double h = grid_[i + 1] - grid_[i];
    const double w = (t - grid_[i]) / h;
    return start_[i] + (end_[i] - start_[i]) * w;
}

double PiecewiseLinearRate::value(double t) const { return segment_value(grid_.segment(t), t); }

double PiecewiseLinearRate::left_value(double t) const {
    const auto nodes = grid_.nodes();
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
    if (it != nodes.end() && *it == t && it != nodes.begin())
        return end_[static_cast<std::size_t>(it - nodes.begin()) - 1];
    return value(t);
}

double PiecewiseLinearRate::integral(double t) const {
    const std::size_t i = grid_.segment(t);
    const double h = grid_[i + 1] - grid_[i];
    const double u = t - grid_[i];
    return cum_[i] + start_[i] * u + (end_[i] - start_[i]) * u * u / (2.0 * h);
}

double PiecewiseLinearRate::double_integral(double t) const {
    const std::size_t i = grid_.segment(t);
    const double h = grid_[i + 1] - grid_[i];
    const double u = t - grid_[i];
    return cum2_[i] + cum_[i] * u + start_[i] * u * u / 2.0 + (end_[i] - start_[i]) * u * u * u / (6.0 * h);
}

PiecewiseLinearRate PiecewiseLinearRate::plus(const PiecewiseLinearRate& other, double scale) const {
    const double h = horizon();
    if (other.horizon() < h)
        throw DomainError("PiecewiseLinearRate::plus: shift horizon " + std::to_string(other.horizon()) +
                          " shorter than curve horizon " + std::to_string(h));
    std::vector<double> nodes(grid_.nodes().begin(), grid_.nodes().end());
    for (double t : other.grid().nodes())
        if (t < h) nodes.push_back(t);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    const std::size_t segments = nodes.size() - 1;
    std::vector<double> start(segments), end(segments);
    for (std::size_t i = 0; i < segments; ++i) {
        const double p = nodes[i];
        const double q = nodes[i + 1];
        // Evaluate each operand inside the segment so jumps at p and q resolve correctly.
        const std::size_t ia = grid_.segment(0.5 * (p + q));
        const std::size_t ib = other.grid().segment(0.5 * (p + q));
        start[i] = segment_value(ia, p) + scale * other.segment_value(ib, p);
        end[i] = segment_value(ia, q) + scale * other.segment_value(ib, q);
    }
    return PiecewiseLinearRate(TimeGrid(std::move(nodes)), std::move(start), std::move(end));
}

PiecewiseLinearRate PiecewiseLinearRate::plus_constant(double c) const {
    std::vector<double> start = start_, end = end_;
    for (auto& v : start) v += c;
    for (auto& v : end) v += c;
    return PiecewiseLinearRate(grid_, std::move(start), std::move(end));
}

PiecewiseLinearRate PiecewiseLinearRate::scaled(double factor) const {
    std::vector<double> start = start_, end = end_;
    for (auto& v : start) v *= factor;
    for (auto& v : end) v *= factor;
    return PiecewiseLinearRate(grid_, std::move(start), std::move(end));
}

// ---------------------------------------------------------------------------

ForwardCurve::ForwardCurve(TimeGrid grid, std::span<const double> forwards)
    : rate_(PiecewiseLinearRate::from_nodal(std::move(grid), forwards)) {}

ForwardCurve::ForwardCurve(PiecewiseLinearRate rate) : rate_(std::move(rate)) {}

ForwardCurve ForwardCurve::flat(double rate, double horizon) {
    const double values[] = {rate, rate};
    return ForwardCurve(TimeGrid({0.0, horizon}), values);
}

ForwardCurve ForwardCurve::from_zero_yields(std::span<const double> times, std::span<const double> yields) {
    if (times.size() != yields.size() || times.empty())
        throw DomainError("from_zero_yields: need matching, non-empty time and yield arrays");
    std::vector<double> nodes{0.0};
    std::vector<double> tz{0.0};
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] == 0.0 && i == 0) continue;
        nodes.push_back(times[i]);
        tz.push_back(times[i] * yields[i]);
    }
    TimeGrid grid(nodes);
    std::vector<double> f(nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) f[i] = (tz[i + 1] - tz[i]) / (nodes[i + 1] - nodes[i]);
    return ForwardCurve(PiecewiseLinearRate(std::move(grid), f, f));
}

double ForwardCurve::discount(double t) const {
    check_time(t, "discount_factor");
    return std::exp(-rate_.integral(t));
}

double ForwardCurve::zero_yield(double t) const {
    check_time(t, "zero_yield");
    if (t == 0.0) return rate_.value(0.0);
    return rate_.integral(t) / t;
}

double ForwardCurve::forward(double t) const {
    check_time(t, "forward_rate");
    return rate_.value(t);
}

double ForwardCurve::forward_left(double t) const {
    check_time(t, "forward_rate");
    return rate_.left_value(t);
}

std::vector<double> ForwardCurve::breakpoints() const {
    return {grid().nodes().begin(), grid().nodes().end()};
}

double ForwardCurve::integrated_forward(double t) const {
    check_time(t, "integrated_forward");
    return rate_.integral(t);
}

double ForwardCurve::integrated_tz(double a, double b) const {
    check_time(a, "integrated_tz");
    check_time(b, "integrated_tz");
    return rate_.double_integral(b) - rate_.double_integral(a);
}

ForwardCurve ForwardCurve::shifted(const CurveShift& shift, double scale) const {
    return ForwardCurve(rate_.plus(shift.rate(), scale));
}

ForwardCurve ForwardCurve::plus_constant(double c) const { return ForwardCurve(rate_.plus_constant(c)); }

// ---------------------------------------------------------------------------

CurveShift::CurveShift(PiecewiseLinearRate df, bool constant) : df_(std::move(df)), constant_(constant) {}

CurveShift::CurveShift(TimeGrid grid, std::span<const double> df_nodes)
    : df_(PiecewiseLinearRate::from_nodal(std::move(grid), df_nodes)), constant_(false) {}

CurveShift CurveShift::constant(double c, double horizon) {
    const double values[] = {c, c};
    return CurveShift(PiecewiseLinearRate::from_nodal(TimeGrid({0.0, horizon}), values), true);
}

namespace {
void check_shift_time(double t, double horizon) {
    if (!(t >= 0.0 && t <= horizon))
        throw DomainError("CurveShift: t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon) + "]");
}
}  // namespace

double CurveShift::dz(double t) const {
    check_shift_time(t, horizon());
    if (t == 0.0) return df_.value(0.0);
    return df_.integral(t) / t;
}

double CurveShift::df(double t) const {
    check_shift_time(t, horizon());
    return df_.value(t);
}

double CurveShift::df_left(double t) const {
    check_shift_time(t, horizon());
    return df_.left_value(t);
}

double CurveShift::integrated(double t) const {
    check_shift_time(t, horizon());
    return df_.integral(t);
}

double CurveShift::integrated_tdz(double a, double b) const {
    check_shift_time(a, horizon());
    check_shift_time(b, horizon());
    return df_.double_integral(b) - df_.double_integral(a);
}

CurveShift CurveShift::scaled(double factor) const { return CurveShift(df_.scaled(factor), constant_); }

}  // namespace curvehedge
