#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dmorse/morse.hpp"

namespace dmorse {

/// Malformed, ragged, empty or duplicate-bearing cloud file. Line numbers in
/// messages are 1-based physical lines.
class CloudFileError : public std::runtime_error {
 public:
  CloudFileError(const std::string& what, std::vector<std::size_t> lines = {})
      : std::runtime_error(what), lines_(std::move(lines)) {}
  const std::vector<std::size_t>& lines() const { return lines_; }

 private:
  std::vector<std::size_t> lines_;
};

// One point per line, comma-separated coordinates (integer, p/q or decimal).
// Blank lines and lines starting with '#' are skipped.
template <class T>
PointCloud<T> parse_point_cloud(std::string_view text, const Tolerance& tol = {});

template <class T>
PointCloud<T> load_point_cloud(const std::filesystem::path& path, const Tolerance& tol = {});

/// Parses a comma-separated query point such as "0,1/2".
template <class T>
Point<T> parse_point(std::string_view text);

}  // namespace dmorse
