#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dmorse/morse.hpp"

namespace dmorse {

struct PlotMarker {
  double x = 0.0;
  double y = 0.0;
  PointKind kind = PointKind::Critical;
  std::size_t index = 0;
};

struct PlotOptions {
  std::size_t grid = 400;
  std::size_t levels = 12;
  std::optional<std::array<double, 4>> bbox;  // xmin, ymin, xmax, ymax; nullopt: auto
  double width_px = 600.0;
};

/// Level-set polylines of one scalar field sampled on a regular grid
/// (marching squares); values[j][i] is the sample at (x_i, y_j).
std::vector<std::vector<std::array<double, 2>>> marching_squares(const std::vector<std::vector<double>>& values,
                                                                 double level, double x0, double y0, double dx,
                                                                 double dy);

/// SVG 1.1 document: level sets of d_X, cloud points as dots, topological
/// critical points as labeled diamonds, differential-critical regular points
/// as hollow circles. Requires a planar cloud.
std::string render_level_svg(const std::vector<std::array<double, 2>>& cloud, const std::vector<PlotMarker>& markers,
                             const PlotOptions& opts);

/// Markers for every non-cloud record of an enumeration.
template <class T>
std::vector<PlotMarker> plot_markers(const std::vector<CriticalPointRecord<T>>& records);

inline constexpr const char* kGeneratorComment = "<!-- generator: dmorse 0.1.0 -->";

}  // namespace dmorse
