#pragma once

#include "curvehedge/time_grid.hpp"
#include "curvehedge/yield_curve.hpp"

#include <span>
#include <vector>

namespace curvehedge {

/// A rate function that is linear on each grid segment.
///
/// Segment i runs from grid[i] to grid[i+1] with value start[i] at its left end
/// and end[i] at its right end, so jumps are allowed at nodes. Integrals
/// are closed form: I(t) = int_0^t r and J(t) = int_0^t I.
class PiecewiseLinearRate {
public:
    PiecewiseLinearRate(TimeGrid grid, std::vector<double> start, std::vector<double> end);

    /// Continuous rate through the given nodal values.
    static PiecewiseLinearRate from_nodal(TimeGrid grid, std::span<const double> values);

    const TimeGrid& grid() const { return grid_; }
    double horizon() const { return grid_.horizon(); }
    std::span<const double> segment_start() const { return start_; }
    std::span<const double> segment_end() const { return end_; }

    /// Right-continuous value; the left limit at the horizon.
    double value(double t) const;
    /// Left limit; at 0 the right value.
    double left_value(double t) const;
    double integral(double t) const;
    double double_integral(double t) const;

    /// this + scale * other on the union grid, restricted to this horizon.
    PiecewiseLinearRate plus(const PiecewiseLinearRate& other, double scale) const;
    PiecewiseLinearRate plus_constant(double c) const;
    PiecewiseLinearRate scaled(double factor) const;

private:
    double segment_value(std::size_t i, double t) const;

    TimeGrid grid_;
    std::vector<double> start_;
    std::vector<double> end_;
    std::vector<double> cum_;     // I at nodes
    std::vector<double> cum2_;    // J at nodes
};

class CurveShift;

/// Market curve stored as a piecewise-linear instantaneous forward rate.
class ForwardCurve final : public YieldCurve {
public:
    /// Continuous piecewise-linear forward through nodal values.
    ForwardCurve(TimeGrid grid, std::span<const double> forwards);
    explicit ForwardCurve(PiecewiseLinearRate rate);

    static ForwardCurve flat(double rate, double horizon = kDefaultHorizon);

    /// Interpolates t*z_t linearly between the given nodes (piecewise-constant forwards).
    /// A node at t = 0 is optional; the first forward extends back to 0.
    static ForwardCurve from_zero_yields(std::span<const double> times, std::span<const double> yields);

    double horizon() const override { return rate_.horizon(); }
    double discount(double t) const override;
    double zero_yield(double t) const override;
    double forward(double t) const override;
    std::vector<double> breakpoints() const override;

    double forward_left(double t) const;
    /// t * z_t, the integrated forward.
    double integrated_forward(double t) const;
    /// int_a^b s z_s ds, closed form.
    double integrated_tz(double a, double b) const;

    const PiecewiseLinearRate& rate() const { return rate_; }
    const TimeGrid& grid() const { return rate_.grid(); }

    ForwardCurve shifted(const CurveShift& shift, double scale = 1.0) const;
    ForwardCurve plus_constant(double c) const;

private:
    PiecewiseLinearRate rate_;
};

/// A curve perturbation expressed through its forward shift Delta f.
class CurveShift {
public:
    explicit CurveShift(PiecewiseLinearRate df, bool constant = false);
    CurveShift(TimeGrid grid, std::span<const double> df_nodes);

    /// Delta z_t = c for all t (and then Delta f_t = c).
    static CurveShift constant(double c, double horizon = kDefaultHorizon);

    double horizon() const { return df_.horizon(); }
    double dz(double t) const;
    double df(double t) const;
    double df_left(double t) const;
    /// t * Delta z_t.
    double integrated(double t) const;
    /// int_a^b s Delta z_s ds.
    double integrated_tdz(double a, double b) const;
    bool is_constant() const { return constant_; }

    const PiecewiseLinearRate& rate() const { return df_; }
    CurveShift scaled(double factor) const;

private:
    PiecewiseLinearRate df_;
    bool constant_;
};

}  // namespace curvehedge
