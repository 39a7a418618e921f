#pragma once

// Shared curves, specs and random liabilities for the unit and acceptance tests.

#include "curvehedge/cash_flow.hpp"
#include "curvehedge/forward_curve.hpp"
#include "curvehedge/method.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace curvehedge::testing {

inline std::string data_path(const std::string& name) { return std::string(CURVEHEDGE_DATA_DIR) + "/" + name; }

// f_t = 0.02 + 0.015 (1 - e^{-t/4}), sampled on a uniform grid to 200.
inline ForwardCurve smooth_curve(double step = 0.25) {
    std::vector<double> t, f;
    const int n = static_cast<int>(std::lround(200.0 / step));
    for (int i = 0; i <= n; ++i) {
        t.push_back(i * step);
        f.push_back(0.02 + 0.015 * (1.0 - std::exp(-t.back() / 4.0)));
    }
    return ForwardCurve(TimeGrid(t), f);
}

inline MethodSpec make_spec(MethodKind kind, double tau = 10.0) {
    MethodSpec s;
    s.kind = kind;
    s.tau = tau;
    switch (kind) {
        case MethodKind::M1:
        case MethodKind::M3: s.ufr = 0.042; break;
        case MethodKind::M5_SFSA: s.ufr = 0.042; s.kappa = 2.0 * tau; break;
        case MethodKind::M6_SW_continuous:
        case MethodKind::M6_SW_discrete: s.ufr = 0.042; s.alpha = 0.1; break;
        default: break;
    }
    return s;
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
    return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// One to four lumps in (tau, 100], half the time plus a density somewhere beyond tau.
inline CashFlow random_liability(std::mt19937_64& rng, double tau) {
    std::vector<Lump> lumps;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) lumps.push_back({uniform(rng, tau + 0.5, 100.0), uniform(rng, 0.5, 2.0)});
    std::vector<Density> dens;
    if (rng() % 2) {
        const double a = uniform(rng, tau + 1.0, 60.0);
        dens.push_back({a, a + uniform(rng, 5.0, 40.0), uniform(rng, 0.1, 1.0)});
    }
    return CashFlow(lumps, dens);
}

}  // namespace curvehedge::testing
