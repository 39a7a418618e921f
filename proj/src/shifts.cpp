#include "curvehedge/shifts.hpp"

#include "curvehedge/errors.hpp"

#include <cmath>
#include <random>

namespace curvehedge {

namespace {

std::vector<double> shift_grid(const ShiftSuiteOptions& o) {
    if (!(o.fine_step > 0.0 && o.coarse_step > 0.0 && o.horizon > 0.0)) throw DomainError("shift grid: bad steps");
    std::vector<double> t{0.0};
    const double fine_end = std::min(o.fine_until, o.horizon);
    for (int k = 1; k * o.fine_step < fine_end - 1e-12; ++k) t.push_back(k * o.fine_step);
    t.push_back(fine_end);
    for (int k = 1; fine_end + k * o.coarse_step < o.horizon - 1e-12; ++k) t.push_back(fine_end + k * o.coarse_step);
    if (t.back() < o.horizon) t.push_back(o.horizon);
    return t;
}

// 53 random bits to [0, 1), independent of the standard library's distribution code.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

CurveShift gaussian_bump_shift(std::span<const double> amplitudes, std::span<const double> centers,
                               std::span<const double> widths, const ShiftSuiteOptions& opts) {
    if (amplitudes.size() != centers.size() || centers.size() != widths.size())
        throw DomainError("gaussian_bump_shift: parameter lists differ in length");
    const std::vector<double> t = shift_grid(opts);
    std::vector<double> df(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = 0; k < amplitudes.size(); ++k) {
            const double x = (t[i] - centers[k]) / widths[k];
            df[i] += amplitudes[k] * std::exp(-0.5 * x * x);
        }
    return CurveShift(TimeGrid(t), df);
}

std::vector<CurveShift> random_shift_suite(std::uint64_t seed, int count, const ShiftSuiteOptions& opts) {
    if (count < 1) throw DomainError("shift suite count must be at least 1");
    if (opts.max_bumps < 1) throw DomainError("shift suite needs at least one bump");
    std::mt19937_64 rng(seed);
    std::vector<CurveShift> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        const int bumps = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(opts.max_bumps));
        std::vector<double> a, c, w;
        for (int k = 0; k < bumps; ++k) {
            a.push_back(opts.max_amplitude * (2.0 * uniform01(rng) - 1.0));
            c.push_back(opts.center_min + (opts.center_max - opts.center_min) * uniform01(rng));
            w.push_back(opts.width_min + (opts.width_max - opts.width_min) * uniform01(rng));
        }
        out.push_back(gaussian_bump_shift(a, c, w, opts));
    }
    return out;
}

CurveShift parallel_shift_bp(double bp, double horizon) { return CurveShift::constant(bp * 1e-4, horizon); }

}  // namespace curvehedge
