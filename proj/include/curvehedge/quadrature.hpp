#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace curvehedge {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendreRule {
public:
    explicit GaussLegendreRule(std::size_t order);

    std::size_t order() const { return nodes_.size(); }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    /// Fixed-order estimate of the integral of `f` over [a, b].
    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    /// Absolute error target for the whole interval, shared among panels by width.
    double abs_tol = 0.0;
    int max_depth = 40;
    /// Subdivision budget per call; once spent, panels are accepted as they stand.
    long max_panels = 1L << 18;
};

/// Adaptive Gauss-Legendre integration of `f` over [a, b].
///
/// Each panel is estimated with a 10-point rule and compared against the sum of
/// the two half panels; a panel is accepted once the two agree to `rel_tol`
/// relative to the integral of |f| over the panel, or to its share of `abs_tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

/// Integrates over [a, b] split at every breakpoint strictly inside the interval.
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opts = {});

}  // namespace curvehedge
