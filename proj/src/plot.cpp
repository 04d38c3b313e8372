#include "dmorse/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dmorse {
namespace {

std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

struct EdgePoint {
  double x, y;
};

}  // namespace

std::vector<std::vector<std::array<double, 2>>> marching_squares(const std::vector<std::vector<double>>& values,
                                                                 double level, double x0, double y0, double dx,
                                                                 double dy) {
  const std::size_t rows = values.size();
  if (rows < 2) return {};
  const std::size_t cols = values.front().size();
  const auto above = [&](std::size_t i, std::size_t j) { return values[j][i] >= level; };
  // Edge ids: 2*(j*cols+i) horizontal (i,j)-(i+1,j); +1 vertical (i,j)-(i,j+1).
  const auto h_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * cols + i); };
  const auto v_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * cols + i) + 1; };

  std::map<std::size_t, EdgePoint> where;
  std::map<std::size_t, std::vector<std::size_t>> links;
  const auto crossing = [&](std::size_t id, std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
    if (where.count(id)) return;
    const double a = values[j0][i0], b = values[j1][i1];
    const double t = a == b ? 0.5 : (level - a) / (b - a);
    const double xa = x0 + dx * static_cast<double>(i0), ya = y0 + dy * static_cast<double>(j0);
    const double xb = x0 + dx * static_cast<double>(i1), yb = y0 + dy * static_cast<double>(j1);
    where[id] = {xa + t * (xb - xa), ya + t * (yb - ya)};
  };
  const auto link = [&](std::size_t e1, std::size_t e2) {
    links[e1].push_back(e2);
    links[e2].push_back(e1);
  };

  for (std::size_t j = 0; j + 1 < rows; ++j) {
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      // Corners counter-clockwise from (i,j); edge k joins corner k and k+1.
      const bool c[4] = {above(i, j), above(i + 1, j), above(i + 1, j + 1), above(i, j + 1)};
      const std::size_t edge[4] = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
      const std::size_t ends[4][4] = {{i, j, i + 1, j}, {i + 1, j, i + 1, j + 1}, {i, j + 1, i + 1, j + 1}, {i, j, i, j + 1}};
      std::vector<int> crossed;
      for (int k = 0; k < 4; ++k)
        if (c[k] != c[(k + 1) % 4]) {
          crossed.push_back(k);
          crossing(edge[k], ends[k][0], ends[k][1], ends[k][2], ends[k][3]);
        }
      if (crossed.size() == 2) {
        link(edge[crossed[0]], edge[crossed[1]]);
      } else if (crossed.size() == 4) {
        // Saddle: cut off the two corners whose class differs from the center.
        const double center = 0.25 * (values[j][i] + values[j][i + 1] + values[j + 1][i + 1] + values[j + 1][i]);
        const bool center_above = center >= level;
        for (int k = 0; k < 4; ++k)
          if (c[k] != center_above) link(edge[(k + 3) % 4], edge[k]);
      }
    }
  }

  std::vector<std::vector<std::array<double, 2>>> lines;
  std::map<std::size_t, bool> used;
  const auto trace = [&](std::size_t start) {
    std::vector<std::array<double, 2>> line;
    std::size_t prev = std::numeric_limits<std::size_t>::max(), cur = start;
    for (;;) {
      used[cur] = true;
      line.push_back({where[cur].x, where[cur].y});
      std::size_t next = std::numeric_limits<std::size_t>::max();
      for (auto nb : links[cur])
        if (nb != prev && !used[nb]) {
          next = nb;
          break;
        }
      if (next == std::numeric_limits<std::size_t>::max()) {
        // Close loops back onto their start.
        for (auto nb : links[cur])
          if (nb == start && line.size() > 2) line.push_back(line.front());
        break;
      }
      prev = cur;
      cur = next;
    }
    lines.push_back(std::move(line));
  };
  for (const auto& [id, nbs] : links)
    if (nbs.size() == 1 && !used[id]) trace(id);
  for (const auto& [id, nbs] : links)
    if (!used[id]) trace(id);
  return lines;
}

std::string render_level_svg(const std::vector<std::array<double, 2>>& cloud, const std::vector<PlotMarker>& markers,
                             const PlotOptions& opts) {
  if (cloud.empty()) throw std::invalid_argument("render_level_svg: empty cloud");
  if (opts.grid < 2) throw std::invalid_argument("render_level_svg: grid must be >= 2");

  std::array<double, 4> box;
  if (opts.bbox) {
    box = *opts.bbox;
    if (!(box[2] > box[0] && box[3] > box[1])) throw std::invalid_argument("render_level_svg: empty bounding box");
  } else {
    double xmin = cloud[0][0], xmax = xmin, ymin = cloud[0][1], ymax = ymin;
    for (const auto& p : cloud) {
      xmin = std::min(xmin, p[0]), xmax = std::max(xmax, p[0]);
      ymin = std::min(ymin, p[1]), ymax = std::max(ymax, p[1]);
    }
    const double extent = std::max(xmax - xmin, ymax - ymin);
    const double pad = extent > 0 ? 0.5 * extent : 1.0;
    box = {xmin - pad, ymin - pad, xmax + pad, ymax + pad};
  }
  const double s = opts.width_px / (box[2] - box[0]);
  const double height = (box[3] - box[1]) * s;
  const auto sx = [&](double x) { return (x - box[0]) * s; };
  const auto sy = [&](double y) { return (box[3] - y) * s; };

  const std::size_t g = opts.grid;
  const double dx = (box[2] - box[0]) / static_cast<double>(g);
  const double dy = (box[3] - box[1]) / static_cast<double>(g);
  std::vector<std::vector<double>> field(g + 1, std::vector<double>(g + 1));
  double fmax = 0.0;
#pragma omp parallel for reduction(max : fmax)
  for (std::ptrdiff_t j = 0; j <= static_cast<std::ptrdiff_t>(g); ++j) {
    const double y = box[1] + dy * static_cast<double>(j);
    for (std::size_t i = 0; i <= g; ++i) {
      const double x = box[0] + dx * static_cast<double>(i);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : cloud) best = std::min(best, (x - p[0]) * (x - p[0]) + (y - p[1]) * (y - p[1]));
      field[j][i] = std::sqrt(best);
      fmax = std::max(fmax, field[j][i]);
    }
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << kGeneratorComment << "\n";
  out << "<!-- transform: svg_x = " << fmt(s, 6) << " * (x - " << fmt(box[0], 6) << "), svg_y = " << fmt(s, 6)
      << " * (" << fmt(box[3], 6) << " - y) -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(opts.width_px) << "\" height=\""
      << fmt(height) << "\" viewBox=\"0 0 " << fmt(opts.width_px) << " " << fmt(height) << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(opts.width_px) << "\" height=\"" << fmt(height)
      << "\" fill=\"white\"/>\n";
  out << "<g class=\"levels\" fill=\"none\" stroke=\"#3060a0\" stroke-width=\"1\">\n";
  for (std::size_t k = 1; k <= opts.levels; ++k) {
    const double level = fmax * static_cast<double>(k) / static_cast<double>(opts.levels + 1);
    out << "<g class=\"level\" data-level=\"" << fmt(level, 6) << "\">\n";
    for (const auto& line : marching_squares(field, level, box[0], box[1], dx, dy)) {
      if (line.size() < 2) continue;
      out << "<polyline points=\"";
      for (std::size_t p = 0; p < line.size(); ++p)
        out << (p ? " " : "") << fmt(sx(line[p][0])) << "," << fmt(sy(line[p][1]));
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</g>\n";
  out << "<g class=\"cloud\">\n";
  for (const auto& p : cloud)
    out << "<circle class=\"cloud-point\" cx=\"" << fmt(sx(p[0])) << "\" cy=\"" << fmt(sy(p[1]))
        << "\" r=\"4\" fill=\"black\"/>\n";
  out << "</g>\n<g class=\"markers\">\n";
  for (const auto& m : markers) {
    const double cx = sx(m.x), cy = sy(m.y);
    if (m.kind == PointKind::Critical) {
      out << "<polygon class=\"critical index-" << m.index << "\" points=\"" << fmt(cx) << "," << fmt(cy - 7) << " "
          << fmt(cx + 7) << "," << fmt(cy) << " " << fmt(cx) << "," << fmt(cy + 7) << " " << fmt(cx - 7) << ","
          << fmt(cy) << "\" fill=\"#c03020\"/>\n";
      out << "<text class=\"index-label\" x=\"" << fmt(cx + 9) << "\" y=\"" << fmt(cy - 9)
          << "\" font-size=\"14\" fill=\"#c03020\">" << m.index << "</text>\n";
    } else if (m.kind == PointKind::RegularCertificate) {
      out << "<circle class=\"regular-critical\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy)
          << "\" r=\"6\" fill=\"none\" stroke=\"#208040\" stroke-width=\"2\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

template <class T>
std::vector<PlotMarker> plot_markers(const std::vector<CriticalPointRecord<T>>& records) {
  std::vector<PlotMarker> out;
  for (const auto& r : records) {
    if (r.classification.kind == PointKind::CriticalIndexZero) continue;
    if (r.location.size() != 2) throw std::invalid_argument("plot_markers: planar records required");
    out.push_back({NumTraits<T>::to_double(r.location[0]), NumTraits<T>::to_double(r.location[1]),
                   r.classification.kind, r.classification.index});
  }
  return out;
}

template std::vector<PlotMarker> plot_markers(const std::vector<CriticalPointRecord<Rational>>&);
template std::vector<PlotMarker> plot_markers(const std::vector<CriticalPointRecord<double>>&);

}  // namespace dmorse
