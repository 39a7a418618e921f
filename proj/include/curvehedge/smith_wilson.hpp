#pragma once

#include "curvehedge/forward_curve.hpp"
#include "curvehedge/time_grid.hpp"
#include "curvehedge/yield_curve.hpp"

#include <memory>
#include <span>
#include <vector>

namespace curvehedge {

/// Wilson kernel W(s,t) = e^{-ufr(s+t)} (alpha min(s,t) - e^{-alpha max(s,t)} sinh(alpha min(s,t))).
double sw_kernel(double s, double t, double ufr, double alpha);
/// Partial derivative of W with respect to its first argument.
double sw_kernel_ds(double s, double t, double ufr, double alpha);

/// Discount curve interpolating finitely many zero-coupon prices with the Wilson kernel:
/// D(t) = e^{-ufr t} + sum_i W(t, t_i) zeta_i.
class SwDiscreteFit final : public YieldCurve {
public:
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> prices() const { return prices_; }
    std::span<const double> zeta() const { return zeta_; }
    double ufr() const { return ufr_; }
    double alpha() const { return alpha_; }
    /// Reciprocal condition estimate of the Gram matrix.
    double rcond() const { return rcond_; }

    double horizon() const override { return horizon_; }
    double discount(double t) const override;
    double zero_yield(double t) const override;
    double forward(double t) const override;
    std::vector<double> breakpoints() const override;

    /// dD(t)/dt.
    double discount_derivative(double t) const;
    /// Solves G x = rhs with the stored factorization.
    std::vector<double> solve(std::span<const double> rhs) const;
    /// beta(t) = G^{-1} w(t): D(t) is affine in the node prices with these weights.
    std::vector<double> price_weights(double t) const;

private:
    friend SwDiscreteFit sw_fit_discrete(std::span<const double>, std::span<const double>, double, double, double);
    struct Factorization;

    SwDiscreteFit() = default;

    std::vector<double> nodes_;
    std::vector<double> prices_;
    std::vector<double> zeta_;
    double ufr_ = 0.0;
    double alpha_ = 0.0;
    double horizon_ = kDefaultHorizon;
    double rcond_ = 0.0;
    std::shared_ptr<const Factorization> factor_;
};

/// Largest admissible Gram condition number before the fit is refused.
inline constexpr double kSwMaxCondition = 1e12;

/// Solves W zeta = D - e^{-ufr t} at the nodes. Throws CalibrationError when the
/// Gram matrix is singular or its condition estimate exceeds kSwMaxCondition.
SwDiscreteFit sw_fit_discrete(std::span<const double> nodes, std::span<const double> prices, double ufr,
                              double alpha, double horizon = kDefaultHorizon);

/// The multiplier 1 + (ufr - f_tau)(1 - e^{-alpha u})/alpha of the continuous
/// Smith-Wilson discount factor at u = t - tau.
double sw_continuous_factor(double f_tau, double ufr, double alpha, double u);

/// |f_kappa - ufr| of the continuous Smith-Wilson forward, u = kappa - tau.
double sw_forward_gap(double f_tau, double ufr, double alpha, double u);

struct AlphaBounds {
    double lo = 1e-4;
    double hi = 1.0;
};

/// Smallest alpha in the bounds with |f_kappa - ufr| <= eps, by bisection to 1e-10.
///
/// Throws NotWellDefinedError when |f_tau - ufr| <= eps (every alpha qualifies),
/// and CalibrationError when even the upper bound misses the criterion.
double sw_alpha_calibrate(const ForwardCurve& z, double tau, double kappa, double ufr, double eps,
                          AlphaBounds bounds = {});

}  // namespace curvehedge
