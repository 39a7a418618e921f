#pragma once

#include "curvehedge/yield_curve.hpp"

#include <string_view>
#include <vector>

namespace curvehedge {

enum class DefectKind {
    negative_forward,     ///< fbar < 0, discount factor increasing
    nonpositive_discount  ///< Dbar <= 0
};

std::string_view to_string(DefectKind kind);

/// A run of consecutive scan points [a, b] sharing one defect.
struct DefectInterval {
    DefectKind kind;
    double a;
    double b;
};

struct DefectReport {
    double step = 0.25;
    std::vector<DefectInterval> intervals;

    bool empty() const { return intervals.empty(); }
    bool has(DefectKind kind) const;
};

inline constexpr double kDefaultScanStep = 0.25;

/// Scans [from, to] (default: the whole curve) at the given step for negative
/// forwards and non-positive discount factors.
DefectReport arbitrage_scan(const YieldCurve& curve, double step = kDefaultScanStep, double from = 0.0,
                            double to = -1.0);

}  // namespace curvehedge
