#pragma once

// Static SVG rendering of trajectories on a fixed 600x600 canvas.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "crn/dynamics.hpp"

namespace crn {

enum class Projection { Simplex, TimeSeries };

/// "simplex" or "time-series"; throws InvalidArgument otherwise.
Projection parse_projection(std::string_view name);

constexpr std::size_t kMaxPlotPoints = 2000;

/// Evenly spaced sample indices, first and last always kept, at most
/// max_points of them.
std::vector<std::size_t> decimate(std::size_t samples, std::size_t max_points = kMaxPlotPoints);

/// Simplex projection maps each state to barycentric coordinates inside a
/// triangle whose corners are the three species; it throws DimensionMismatch
/// unless there are exactly three species.
std::string render_svg(const TrajectoryTable& table, Projection projection);

}  // namespace crn
