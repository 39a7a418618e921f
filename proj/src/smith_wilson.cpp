#include "curvehedge/smith_wilson.hpp"

#include "curvehedge/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace curvehedge {

namespace {

// alpha*min - e^{-alpha max} sinh(alpha min), written without overflowing sinh.
double wilson_core(double lo, double hi, double alpha) {
    return alpha * lo - 0.5 * (std::exp(-alpha * (hi - lo)) - std::exp(-alpha * (hi + lo)));
}

}  // namespace

double sw_kernel(double s, double t, double ufr, double alpha) {
    const double lo = std::min(s, t);
    const double hi = std::max(s, t);
    return std::exp(-ufr * (s + t)) * wilson_core(lo, hi, alpha);
}

double sw_kernel_ds(double s, double t, double ufr, double alpha) {
    double dcore;
    if (s <= t) {
        dcore = alpha - 0.5 * alpha * (std::exp(-alpha * (t - s)) + std::exp(-alpha * (t + s)));
    } else {
        dcore = 0.5 * alpha * (std::exp(-alpha * (s - t)) - std::exp(-alpha * (s + t)));
    }
    const double core = wilson_core(std::min(s, t), std::max(s, t), alpha);
    return std::exp(-ufr * (s + t)) * (dcore - ufr * core);
}

struct SwDiscreteFit::Factorization {
    Eigen::LDLT<Eigen::MatrixXd> ldlt;
};

SwDiscreteFit sw_fit_discrete(std::span<const double> nodes, std::span<const double> prices, double ufr,
                              double alpha, double horizon) {
    const std::size_t n = nodes.size();
    if (n == 0 || prices.size() != n) throw DomainError("sw_fit_discrete: need N >= 1 nodes with one price each");
    if (!(alpha > 0.0)) throw DomainError("sw_fit_discrete: alpha must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(nodes[i] > 0.0)) throw DomainError("sw_fit_discrete: nodes must be positive");
        if (i > 0 && !(nodes[i] > nodes[i - 1])) throw DomainError("sw_fit_discrete: nodes must be distinct and ascending");
        if (!(prices[i] > 0.0)) throw DomainError("sw_fit_discrete: prices must be positive");
    }
    if (nodes[n - 1] > horizon) throw DomainError("sw_fit_discrete: node beyond horizon");

    Eigen::MatrixXd gram(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = sw_kernel(nodes[i], nodes[j], ufr, alpha);
            gram(i, j) = w;
            gram(j, i) = w;
        }
        rhs(i) = prices[i] - std::exp(-ufr * nodes[i]);
    }

    auto factor = std::make_shared<SwDiscreteFit::Factorization>();
    factor->ldlt.compute(gram);
    const double rc = factor->ldlt.info() == Eigen::Success ? factor->ldlt.rcond() : 0.0;
    if (!(rc > 0.0) || 1.0 / rc > kSwMaxCondition) {
        // The closest pair of nodes is the usual culprit.
        std::size_t worst = 0;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (nodes[i + 1] - nodes[i] < gap) {
                gap = nodes[i + 1] - nodes[i];
                worst = i;
            }
        std::ostringstream msg;
        msg << "sw_fit_discrete: Gram matrix ill-conditioned (condition estimate "
            << (rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity()) << ")";
        if (n > 1) msg << "; closest nodes t=" << nodes[worst] << " and t=" << nodes[worst + 1];
        else msg << "; node t=" << nodes[0];
        throw CalibrationError(msg.str());
    }
    const Eigen::VectorXd zeta = factor->ldlt.solve(rhs);

    SwDiscreteFit fit;
    fit.nodes_.assign(nodes.begin(), nodes.end());
    fit.prices_.assign(prices.begin(), prices.end());
    fit.zeta_.assign(zeta.data(), zeta.data() + n);
    fit.ufr_ = ufr;
    fit.alpha_ = alpha;
    fit.horizon_ = horizon;
    fit.rcond_ = rc;
    fit.factor_ = std::move(factor);
    return fit;
}

double SwDiscreteFit::discount(double t) const {
    check_time(t, "discount_factor");
    double d = std::exp(-ufr_ * t);
    for (std::size_t i = 0; i < nodes_.size(); ++i) d += sw_kernel(t, nodes_[i], ufr_, alpha_) * zeta_[i];
    return d;
}

double SwDiscreteFit::discount_derivative(double t) const {
    check_time(t, "discount_derivative");
    double d = -ufr_ * std::exp(-ufr_ * t);
    for (std::size_t i = 0; i < nodes_.size(); ++i) d += sw_kernel_ds(t, nodes_[i], ufr_, alpha_) * zeta_[i];
    return d;
}

double SwDiscreteFit::zero_yield(double t) const {
    check_time(t, "zero_yield");
    if (t == 0.0) return forward(0.0);
    const double d = discount(t);
    return d > 0.0 ? -std::log(d) / t : std::numeric_limits<double>::quiet_NaN();
}

double SwDiscreteFit::forward(double t) const {
    check_time(t, "forward_rate");
    return -discount_derivative(t) / discount(t);
}

std::vector<double> SwDiscreteFit::breakpoints() const {
    std::vector<double> b{0.0};
    b.insert(b.end(), nodes_.begin(), nodes_.end());
    b.push_back(horizon_);
    return b;
}

std::vector<double> SwDiscreteFit::solve(std::span<const double> rhs) const {
    if (rhs.size() != nodes_.size()) throw DomainError("SwDiscreteFit::solve: size mismatch");
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd x = factor_->ldlt.solve(b);
    return {x.data(), x.data() + x.size()};
}

std::vector<double> SwDiscreteFit::price_weights(double t) const {
    std::vector<double> w(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) w[i] = sw_kernel(t, nodes_[i], ufr_, alpha_);
    return solve(w);
}

double sw_continuous_factor(double f_tau, double ufr, double alpha, double u) {
    return 1.0 + (ufr - f_tau) * (-std::expm1(-alpha * u)) / alpha;
}

double sw_forward_gap(double f_tau, double ufr, double alpha, double u) {
    const double b = sw_continuous_factor(f_tau, ufr, alpha, u);
    if (!(b > 0.0)) return std::numeric_limits<double>::infinity();
    return std::abs(ufr - f_tau) * std::exp(-alpha * u) / b;
}

double sw_alpha_calibrate(const ForwardCurve& z, double tau, double kappa, double ufr, double eps,
                          AlphaBounds bounds) {
    if (!(kappa > tau)) throw DomainError("sw_alpha_calibrate: kappa must exceed tau");
    if (!(eps > 0.0)) throw DomainError("sw_alpha_calibrate: epsilon must be positive");
    if (!(bounds.lo > 0.0 && bounds.hi > bounds.lo)) throw DomainError("sw_alpha_calibrate: invalid alpha bounds");
    const double f_tau = z.forward_left(tau);
    if (std::abs(f_tau - ufr) <= eps)
        throw NotWellDefinedError("sw_alpha_calibrate: |f_tau - ufr| <= epsilon, every alpha satisfies the criterion");
    const double u = kappa - tau;
    auto ok = [&](double a) { return sw_forward_gap(f_tau, ufr, a, u) <= eps; };
    if (ok(bounds.lo)) return bounds.lo;
    if (!ok(bounds.hi)) {
        std::ostringstream msg;
        msg << "sw_alpha_calibrate: |f_kappa - ufr| = " << sw_forward_gap(f_tau, ufr, bounds.hi, u)
            << " > epsilon even at alpha = " << bounds.hi;
        throw CalibrationError(msg.str());
    }
    double lo = bounds.lo;
    double hi = bounds.hi;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace curvehedge
