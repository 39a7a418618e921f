#include "curvehedge/time_grid.hpp"

#include "curvehedge/errors.hpp"
#include "curvehedge/yield_curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace curvehedge {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw DomainError("TimeGrid: at least two nodes required");
    if (nodes_.front() != 0.0) throw DomainError("TimeGrid: first node must be 0");
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i]) || !(nodes_[i] > nodes_[i - 1]))
            throw DomainError("TimeGrid: nodes must be finite and strictly increasing (node " +
                              std::to_string(i) + ")");
    }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t segments) {
    if (segments == 0 || !(horizon > 0.0)) throw DomainError("TimeGrid::uniform: need horizon > 0 and segments > 0");
    std::vector<double> nodes(segments + 1);
    for (std::size_t i = 0; i <= segments; ++i) nodes[i] = horizon * static_cast<double>(i) / static_cast<double>(segments);
    nodes.back() = horizon;
    return TimeGrid(std::move(nodes));
}

std::size_t TimeGrid::segment(double t) const {
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    if (it == nodes_.begin()) return 0;
    const auto idx = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(idx, nodes_.size() - 2);
}

void YieldCurve::check_time(double t, const char* op) const {
    if (!(t >= 0.0 && t <= horizon()))
        throw DomainError(std::string(op) + ": t = " + std::to_string(t) + " outside [0, " +
                          std::to_string(horizon()) + "]");
}

}  // namespace curvehedge
