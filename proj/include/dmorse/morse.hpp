#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dmorse/convex.hpp"
#include "dmorse/scalar.hpp"

namespace dmorse {

class DuplicatePointError : public std::invalid_argument {
 public:
  DuplicatePointError(const std::string& what, std::vector<std::pair<std::size_t, std::size_t>> pairs)
      : std::invalid_argument(what), pairs_(std::move(pairs)) {}
  // Zero-based index pairs of coinciding points.
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/// Immutable ordered set of pairwise distinct points sharing one ambient
/// dimension. Float-mode clouds carry the tie tolerance used by every query.
template <class T>
class PointCloud {
 public:
  explicit PointCloud(std::vector<Point<T>> points, const Tolerance& tol = {});

  const std::vector<Point<T>>& points() const { return points_; }
  const Point<T>& operator[](std::size_t i) const { return points_[i]; }
  std::size_t size() const { return points_.size(); }
  std::size_t ambient() const { return ambient_; }
  const Tolerance& tolerance() const { return tol_; }

  std::optional<std::size_t> index_of(const Point<T>& z) const;
  std::vector<Point<T>> select(const std::vector<std::size_t>& indices) const;

 private:
  std::vector<Point<T>> points_;
  std::size_t ambient_ = 0;
  Tolerance tol_;
};

template <class T>
struct ProjectionRecord {
  std::vector<std::size_t> indices;  // sorted
  T squared_value{0};                // d_X(z)^2
};

template <class T>
struct GradientResult {
  ProjectionRecord<T> projection;
  Point<T> sigma;
  Vec<T> unnormalized;  // z - sigma; zero at points of X

  /// (z - sigma) / d_X(z) in binary64.
  std::vector<double> normalized() const;
};

template <class T>
struct ClarkeGenerators {
  std::vector<Vec<T>> generators;  // z - x for x in Pi_X(z)
  T squared_length{0};

  std::vector<std::vector<double>> normalized() const;
};

enum class PointKind { CriticalIndexZero, Critical, RegularNotDifferentialCritical, RegularCertificate };

template <class T>
struct Classification {
  PointKind kind = PointKind::RegularNotDifferentialCritical;
  std::size_t index = 0;  // Morse index for CriticalIndexZero / Critical
  T margin{0};            // relint margin t* for Critical
  Vec<T> gradient;        // unnormalized z - sigma for RegularNotDifferentialCritical
  Vec<T> certificate;     // v for RegularCertificate

  bool is_topological_critical() const {
    return kind == PointKind::CriticalIndexZero || kind == PointKind::Critical;
  }
  bool is_differential_critical() const { return kind != PointKind::RegularNotDifferentialCritical; }
};

template <class T>
struct CriticalPointRecord {
  Point<T> location;
  T squared_value{0};
  ProjectionRecord<T> projection;
  Classification<T> classification;
};

enum class Execution { Serial, Parallel };

struct EnumerationOptions {
  std::size_t max_subset_size = 0;  // 0: no limit
  std::size_t cap = 25;             // refuse larger clouds unless allow_large
  bool allow_large = false;
  Execution execution = Execution::Parallel;
};

class CloudTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
ProjectionRecord<T> projection_set(const PointCloud<T>& cloud, const Point<T>& z);

template <class T>
GradientResult<T> generalized_gradient(const PointCloud<T>& cloud, const Point<T>& z);

/// Generators of Clarke's generalized gradient at z (unnormalized). Throws
/// std::domain_error when z is a point of the cloud.
template <class T>
ClarkeGenerators<T> clarke_generators(const PointCloud<T>& cloud, const Point<T>& z);

/// Topological classification of z for the distance function to the cloud.
template <class T>
Classification<T> classify(const PointCloud<T>& cloud, const Point<T>& z);

/// Every differential critical point, classified, sorted by squared value
/// then lexicographic location. Output is independent of `execution`.
template <class T>
std::vector<CriticalPointRecord<T>> enumerate_critical(const PointCloud<T>& cloud, const EnumerationOptions& opts = {});

/// Canonical record order: squared value, then lexicographic location.
template <class T>
bool record_less(const CriticalPointRecord<T>& a, const CriticalPointRecord<T>& b);

}  // namespace dmorse
