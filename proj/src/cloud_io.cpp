#include "dmorse/cloud_io.hpp"

#include <fstream>
#include <sstream>

namespace dmorse {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  for (;;) {
    auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

template <class T>
Point<T> parse_point(std::string_view text) {
  Point<T> p;
  for (auto field : split_commas(text)) p.push_back(parse_as<T>(field));
  return p;
}

template <class T>
PointCloud<T> parse_point_cloud(std::string_view text, const Tolerance& tol) {
  std::vector<Point<T>> points;
  std::vector<std::size_t> line_of;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (!text.empty() || line_no == 0) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = strip(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') {
      if (text.empty()) break;
      continue;
    }
    Point<T> p;
    try {
      p = parse_point<T>(line);
    } catch (const ParseError& e) {
      throw CloudFileError("line " + std::to_string(line_no) + ": " + e.what(), {line_no});
    }
    if (points.empty()) dim = p.size();
    if (p.size() != dim)
      throw CloudFileError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                               " coordinates, found " + std::to_string(p.size()),
                           {line_no});
    points.push_back(std::move(p));
    line_of.push_back(line_no);
    if (text.empty()) break;
  }
  if (points.empty()) throw CloudFileError("point cloud file contains no points");

  std::vector<std::size_t> dup_lines;
  std::string pairs;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (vectors_equal(points[i], points[j], tol)) {
        pairs += (pairs.empty() ? "" : ", ") + std::to_string(line_of[i]) + "," + std::to_string(line_of[j]);
        dup_lines.push_back(line_of[i]);
        dup_lines.push_back(line_of[j]);
      }
  if (!dup_lines.empty()) throw CloudFileError("duplicate points on lines " + pairs, dup_lines);
  return PointCloud<T>(std::move(points), tol);
}

template <class T>
PointCloud<T> load_point_cloud(const std::filesystem::path& path, const Tolerance& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CloudFileError("cannot open point cloud file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_point_cloud<T>(buf.str(), tol);
}

template Point<Rational> parse_point(std::string_view);
template Point<double> parse_point(std::string_view);
template PointCloud<Rational> parse_point_cloud(std::string_view, const Tolerance&);
template PointCloud<double> parse_point_cloud(std::string_view, const Tolerance&);
template PointCloud<Rational> load_point_cloud(const std::filesystem::path&, const Tolerance&);
template PointCloud<double> load_point_cloud(const std::filesystem::path&, const Tolerance&);

}  // namespace dmorse
