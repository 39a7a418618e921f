#pragma once

#include "curvehedge/forward_curve.hpp"

#include <cstdint>
#include <vector>

namespace curvehedge {

struct ShiftSuiteOptions {
    double horizon = kDefaultHorizon;
    double max_amplitude = 0.01;  ///< per bump, in forward-rate units
    int max_bumps = 5;
    double center_min = 0.0;
    double center_max = 60.0;
    double width_min = 1.0;
    double width_max = 10.0;
    double fine_step = 0.25;  ///< grid step up to fine_until
    double fine_until = 100.0;
    double coarse_step = 1.0;
};

/// Delta f_t = sum_k a_k exp(-(t - c_k)^2 / (2 w_k^2)), sampled on a piecewise grid.
CurveShift gaussian_bump_shift(std::span<const double> amplitudes, std::span<const double> centers,
                               std::span<const double> widths, const ShiftSuiteOptions& opts = {});

/// `count` seeded random smooth shifts; identical seeds give identical suites on every platform.
std::vector<CurveShift> random_shift_suite(std::uint64_t seed, int count, const ShiftSuiteOptions& opts = {});

/// Delta z_t = bp * 1e-4 for all t.
CurveShift parallel_shift_bp(double bp, double horizon = kDefaultHorizon);

}  // namespace curvehedge
