#include "curvehedge/arbitrage.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace curvehedge {

std::string_view to_string(DefectKind kind) {
    return kind == DefectKind::negative_forward ? "negative_forward" : "nonpositive_discount";
}

bool DefectReport::has(DefectKind kind) const {
    return std::any_of(intervals.begin(), intervals.end(), [kind](const auto& i) { return i.kind == kind; });
}

DefectReport arbitrage_scan(const YieldCurve& curve, double step, double from, double to) {
    if (!(step > 0.0)) throw DomainError("arbitrage_scan: step must be positive");
    if (to < 0.0) to = curve.horizon();
    if (!(from >= 0.0 && to <= curve.horizon() && from <= to)) throw DomainError("arbitrage_scan: bad scan range");

    std::vector<double> points;
    const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) points.push_back(from + static_cast<double>(k) * step);
    if (points.back() < to) points.push_back(to);

    DefectReport report;
    report.step = step;
    std::optional<DefectInterval> open_fwd, open_disc;
    auto track = [&report](std::optional<DefectInterval>& open, bool flagged, DefectKind kind, double t) {
        if (flagged) {
            if (open) open->b = t;
            else open = DefectInterval{kind, t, t};
        } else if (open) {
            report.intervals.push_back(*open);
            open.reset();
        }
    };
    for (double t : points) {
        const double d = curve.discount(t);
        const double f = curve.forward(t);
        track(open_disc, !(d > 0.0), DefectKind::nonpositive_discount, t);
        // A vanishing denominator leaves f non-finite; the discount check covers it.
        track(open_fwd, std::isfinite(f) && f < 0.0, DefectKind::negative_forward, t);
    }
    if (open_disc) report.intervals.push_back(*open_disc);
    if (open_fwd) report.intervals.push_back(*open_fwd);
    std::stable_sort(report.intervals.begin(), report.intervals.end(),
                     [](const DefectInterval& x, const DefectInterval& y) { return x.a < y.a; });
    return report;
}

}  // namespace curvehedge
