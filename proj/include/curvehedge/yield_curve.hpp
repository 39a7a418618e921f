#pragma once

#include <vector>

namespace curvehedge {

/// Read-only view of a discount curve on [0, horizon()].
///
/// Implementations are immutable after construction. `breakpoints()` lists the
/// times where the forward curve may lose smoothness; integrators split there.
class YieldCurve {
public:
    virtual ~YieldCurve() = default;

    virtual double horizon() const = 0;
    virtual double discount(double t) const = 0;
    /// Continuously compounded zero yield; at t = 0 the forward rate f_0.
    virtual double zero_yield(double t) const = 0;
    /// Instantaneous forward rate (right limit at a jump).
    virtual double forward(double t) const = 0;
    virtual std::vector<double> breakpoints() const = 0;

protected:
    /// Throws DomainError when t lies outside [0, horizon()].
    void check_time(double t, const char* op) const;
};

}  // namespace curvehedge
