#include "curvehedge/quadrature.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvehedge {

GaussLegendreRule::GaussLegendreRule(std::size_t order) : nodes_(order), weights_(order) {
    if (order == 0) throw DomainError("GaussLegendreRule: order must be positive");
    const std::size_t n = order;
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        // Chebyshev-like initial guess, refined by Newton on P_n.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes_[m - 1] = 0.0;
}

namespace {

const GaussLegendreRule& panel_rule() {
    static const GaussLegendreRule rule(10);
    return rule;
}

struct PanelEstimate {
    double value;
    double magnitude;
};

PanelEstimate estimate(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = panel_rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        const double v = f(mid + half * rule.nodes()[i]);
        sum += rule.weights()[i] * v;
        mag += rule.weights()[i] * std::abs(v);
    }
    return {half * sum, std::abs(half) * mag};
}

struct Budget {
    double abs_density;  // abs_tol per unit width
    long panels_left;
};

double adapt(const std::function<double(double)>& f, double a, double b, PanelEstimate whole,
             const QuadratureOptions& opts, int depth, Budget& budget) {
    const double mid = 0.5 * (a + b);
    const PanelEstimate left = estimate(f, a, mid);
    const PanelEstimate right = estimate(f, mid, b);
    const double refined = left.value + right.value;
    const double scale = left.magnitude + right.magnitude;
    if (!std::isfinite(refined)) return refined;
    const double tol = std::max(opts.rel_tol * scale, budget.abs_density * (b - a));
    if (std::abs(refined - whole.value) <= tol || depth >= opts.max_depth || scale == 0.0 ||
        --budget.panels_left <= 0) {
        return refined;
    }
    return adapt(f, a, mid, left, opts, depth + 1, budget) + adapt(f, mid, b, right, opts, depth + 1, budget);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, opts);
    Budget budget{opts.abs_tol / (b - a), opts.max_panels};
    return adapt(f, a, b, estimate(f, a, b), opts, 0, budget);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_piecewise(f, b, a, breakpoints, opts);
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b) cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    QuadratureOptions piece = opts;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double share = (cuts[i + 1] - cuts[i]) / (b - a);
        piece.abs_tol = opts.abs_tol * share;
        piece.max_panels = std::max(64L, static_cast<long>(static_cast<double>(opts.max_panels) * share));
        total += integrate(f, cuts[i], cuts[i + 1], piece);
    }
    return total;
}

}  // namespace curvehedge
