#pragma once

#include "curvehedge/quadrature.hpp"
#include "curvehedge/yield_curve.hpp"

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace curvehedge {

struct Lump {
    double t;
    double amount;
};

/// Constant payment rate per year over [a, b].
struct Density {
    double a;
    double b;
    double rate;
};

/// Bounded-variation cash flow: finitely many lumps plus piecewise-constant densities.
///
/// Lumps at the same time are merged by summation; densities must not overlap.
/// A lump at t = 0 is the initial payment C_0.
class CashFlow {
public:
    CashFlow() = default;
    CashFlow(std::vector<Lump> lumps, std::vector<Density> densities);

    static CashFlow lump(double t, double amount);

    std::span<const Lump> lumps() const { return lumps_; }
    std::span<const Density> densities() const { return densities_; }
    bool empty() const { return lumps_.empty() && densities_.empty(); }

    /// Earliest time carrying mass (lump time or density start); +inf when empty.
    double first_time() const;
    double last_time() const;

    CashFlow operator+(const CashFlow& other) const;
    CashFlow scaled(double factor) const;

private:
    std::vector<Lump> lumps_;
    std::vector<Density> densities_;
};

using Weight = std::function<double(double)>;

/// int w(t) D_t dC_t over the whole flow: lumps contribute w D a, densities
/// are integrated by adaptive Gauss-Legendre split at curve and extra breakpoints.
double integrate_discounted(const YieldCurve& curve, const CashFlow& flow, const Weight& weight,
                            std::span<const double> extra_breaks = {}, const QuadratureOptions& opts = {});

/// The present-value measure dC*_t = D_t dC_t of a flow under a curve.
class DiscountedFlow {
public:
    DiscountedFlow(std::shared_ptr<const YieldCurve> curve, CashFlow source);

    const CashFlow& source() const { return source_; }
    const YieldCurve& curve() const { return *curve_; }
    std::shared_ptr<const YieldCurve> curve_ptr() const { return curve_; }

    /// Discounted lumps (t, D_t * amount).
    std::span<const Lump> lumps() const { return lumps_; }
    /// Present-value density rate D_t * rate at t (0 outside every segment).
    double density(double t) const;

    /// C*_T.
    double total() const { return total_; }
    /// C*_t, right-continuous (lumps at t included).
    double cumulative(double t) const;
    /// int w dC*.
    double integrate(const Weight& weight, std::span<const double> extra_breaks = {}) const;

private:
    std::shared_ptr<const YieldCurve> curve_;
    CashFlow source_;
    std::vector<Lump> lumps_;
    double total_ = 0.0;
};

}  // namespace curvehedge
