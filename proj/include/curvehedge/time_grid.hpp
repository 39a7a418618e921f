#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace curvehedge {

/// Default analysis horizon in years.
inline constexpr double kDefaultHorizon = 200.0;

/// Strictly increasing time nodes in years, starting at 0 and ending at the horizon.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> nodes);

    /// `segments` equal steps on [0, horizon].
    static TimeGrid uniform(double horizon, std::size_t segments);

    std::span<const double> nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double horizon() const { return nodes_.back(); }
    double operator[](std::size_t i) const { return nodes_[i]; }

    /// Index i of the segment [nodes[i], nodes[i+1]] containing t; the last segment owns the horizon.
    std::size_t segment(double t) const;

    bool contains(double t) const { return t >= 0.0 && t <= horizon(); }

private:
    std::vector<double> nodes_;
};

}  // namespace curvehedge
