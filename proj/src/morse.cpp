#include "dmorse/morse.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dmorse {

template <class T>
PointCloud<T>::PointCloud(std::vector<Point<T>> points, const Tolerance& tol) : points_(std::move(points)), tol_(tol) {
  if (points_.empty()) throw std::invalid_argument("PointCloud: empty point set");
  ambient_ = points_.front().size();
  if (ambient_ == 0) throw std::invalid_argument("PointCloud: ambient dimension must be >= 1");
  for (const auto& p : points_)
    if (p.size() != ambient_) throw std::invalid_argument("PointCloud: ragged coordinates");
  std::vector<std::pair<std::size_t, std::size_t>> dups;
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (vectors_equal(points_[i], points_[j], tol_)) dups.emplace_back(i, j);
  if (!dups.empty()) {
    std::string msg = "PointCloud: duplicate points at indices";
    for (auto [i, j] : dups) msg += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    throw DuplicatePointError(msg, std::move(dups));
  }
}

template <class T>
std::optional<std::size_t> PointCloud<T>::index_of(const Point<T>& z) const {
  if (z.size() != ambient_) throw std::invalid_argument("PointCloud: query dimension mismatch");
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (vectors_equal(points_[i], z, tol_)) return i;
  return std::nullopt;
}

template <class T>
std::vector<Point<T>> PointCloud<T>::select(const std::vector<std::size_t>& indices) const {
  std::vector<Point<T>> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(points_.at(i));
  return out;
}

template <class T>
ProjectionRecord<T> projection_set(const PointCloud<T>& cloud, const Point<T>& z) {
  if (z.size() != cloud.ambient()) throw std::invalid_argument("projection_set: dimension mismatch");
  const auto& tol = cloud.tolerance();
  std::vector<T> d2;
  d2.reserve(cloud.size());
  for (const auto& x : cloud.points()) d2.push_back(squared_distance(z, x));
  ProjectionRecord<T> rec;
  rec.squared_value = *std::min_element(d2.begin(), d2.end());
  for (std::size_t i = 0; i < d2.size(); ++i)
    if (compare(d2[i], rec.squared_value, tol) == 0) rec.indices.push_back(i);
  return rec;
}

template <class T>
std::vector<double> GradientResult<T>::normalized() const {
  std::vector<double> g = to_doubles(unnormalized);
  const double r = std::sqrt(NumTraits<T>::to_double(projection.squared_value));
  if (r > 0.0)
    for (auto& v : g) v /= r;
  return g;
}

template <class T>
std::vector<std::vector<double>> ClarkeGenerators<T>::normalized() const {
  std::vector<std::vector<double>> out;
  const double r = std::sqrt(NumTraits<T>::to_double(squared_length));
  for (const auto& g : generators) {
    auto v = to_doubles(g);
    for (auto& c : v) c /= r;
    out.push_back(std::move(v));
  }
  return out;
}

template <class T>
GradientResult<T> generalized_gradient(const PointCloud<T>& cloud, const Point<T>& z) {
  GradientResult<T> out;
  out.projection = projection_set(cloud, z);
  if (cloud.index_of(z)) {
    out.sigma = z;
    out.unnormalized.assign(z.size(), T(0));
    return out;
  }
  auto mn = min_norm_point(cloud.select(out.projection.indices), z, cloud.tolerance());
  out.sigma = std::move(mn.sigma);
  out.unnormalized = sub(z, out.sigma);
  return out;
}

template <class T>
ClarkeGenerators<T> clarke_generators(const PointCloud<T>& cloud, const Point<T>& z) {
  if (cloud.index_of(z)) throw std::domain_error("clarke_generators: query point belongs to the cloud");
  auto proj = projection_set(cloud, z);
  ClarkeGenerators<T> out;
  out.squared_length = proj.squared_value;
  for (auto i : proj.indices) out.generators.push_back(sub(z, cloud[i]));
  return out;
}

namespace {

// Steps 2-3 of the classification, given z not in X and its projection set.
template <class T>
Classification<T> classify_off_cloud(const PointCloud<T>& cloud, const Point<T>& z, const ProjectionRecord<T>& proj) {
  const auto& tol = cloud.tolerance();
  const auto pi = cloud.select(proj.indices);
  Classification<T> c;
  if (!conv_contains(pi, z, tol).inside) {
    c.kind = PointKind::RegularNotDifferentialCritical;
    c.gradient = sub(z, min_norm_point(pi, z, tol).sigma);
    return c;
  }
  std::vector<Vec<T>> shifted;
  shifted.reserve(pi.size());
  for (const auto& x : pi) shifted.push_back(sub(x, z));
  auto cone = positive_span_test(shifted, tol);
  if (cone.positively_spans()) {
    c.kind = PointKind::Critical;
    c.index = rank_and_basis(shifted, tol).dim;
    c.margin = cone.margin;
  } else {
    c.kind = PointKind::RegularCertificate;
    c.certificate = std::move(cone.certificate);
  }
  return c;
}

template <class T>
CriticalPointRecord<T> cloud_point_record(const PointCloud<T>& cloud, std::size_t i) {
  CriticalPointRecord<T> r;
  r.location = cloud[i];
  r.squared_value = 0;
  r.projection.indices = {i};
  r.projection.squared_value = 0;
  r.classification.kind = PointKind::CriticalIndexZero;
  r.classification.index = 0;
  return r;
}

// Depth-first search over index-increasing subsets that extend `subset`.
// A subset with no equidistant point has no equidistant supersets either.
template <class T>
void explore(const PointCloud<T>& cloud, std::vector<std::size_t>& subset, std::size_t max_size,
             std::vector<CriticalPointRecord<T>>& out) {
  const auto& tol = cloud.tolerance();
  auto ball = circumcenter_in_affine_hull(cloud.select(subset), tol);
  if (!ball) return;

  // Keep c only when Pi_X(c) = subset: every other point strictly farther.
  bool kept = true;
  for (std::size_t i = 0, s = 0; i < cloud.size() && kept; ++i) {
    if (s < subset.size() && subset[s] == i) {
      ++s;
      continue;
    }
    if (compare(squared_distance(ball->center, cloud[i]), ball->squared_radius, tol) <= 0) kept = false;
  }
  if (kept && conv_contains(cloud.select(subset), ball->center, tol).inside) {
    CriticalPointRecord<T> rec;
    rec.location = ball->center;
    rec.squared_value = ball->squared_radius;
    rec.projection.indices = subset;
    rec.projection.squared_value = ball->squared_radius;
    rec.classification = classify_off_cloud(cloud, rec.location, rec.projection);
    out.push_back(std::move(rec));
  }

  if (max_size != 0 && subset.size() >= max_size) return;
  for (std::size_t next = subset.back() + 1; next < cloud.size(); ++next) {
    subset.push_back(next);
    explore(cloud, subset, max_size, out);
    subset.pop_back();
  }
}

}  // namespace

template <class T>
Classification<T> classify(const PointCloud<T>& cloud, const Point<T>& z) {
  if (z.size() != cloud.ambient()) throw std::invalid_argument("classify: dimension mismatch");
  if (cloud.index_of(z)) {
    Classification<T> c;
    c.kind = PointKind::CriticalIndexZero;
    return c;
  }
  return classify_off_cloud(cloud, z, projection_set(cloud, z));
}

template <class T>
bool record_less(const CriticalPointRecord<T>& a, const CriticalPointRecord<T>& b) {
  if (a.squared_value < b.squared_value) return true;
  if (b.squared_value < a.squared_value) return false;
  return std::lexicographical_compare(a.location.begin(), a.location.end(), b.location.begin(), b.location.end());
}

template <class T>
std::vector<CriticalPointRecord<T>> enumerate_critical(const PointCloud<T>& cloud, const EnumerationOptions& opts) {
  if (cloud.size() > opts.cap && !opts.allow_large)
    throw CloudTooLargeError("enumerate_critical: cloud has " + std::to_string(cloud.size()) +
                             " points, above the cap of " + std::to_string(opts.cap) + " (override required)");
  if (opts.max_subset_size == 1) throw std::invalid_argument("enumerate_critical: max_subset_size must be 0 or >= 2");

  std::vector<CriticalPointRecord<T>> records;
  for (std::size_t i = 0; i < cloud.size(); ++i) records.push_back(cloud_point_record(cloud, i));

  std::vector<std::pair<std::size_t, std::size_t>> seeds;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j) seeds.emplace_back(i, j);

  if (opts.execution == Execution::Serial) {
    for (auto [i, j] : seeds) {
      std::vector<std::size_t> subset{i, j};
      explore(cloud, subset, opts.max_subset_size, records);
    }
  } else {
    std::vector<std::vector<CriticalPointRecord<T>>> per_seed(seeds.size());
    std::exception_ptr error;
    const auto count = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < count; ++s) {
      try {
        std::vector<std::size_t> subset{seeds[s].first, seeds[s].second};
        explore(cloud, subset, opts.max_subset_size, per_seed[s]);
      } catch (...) {
#pragma omp critical(dmorse_enumerate_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    for (auto& chunk : per_seed)
      for (auto& r : chunk) records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return record_less(a, b); });
  return records;
}

#define DMORSE_INSTANTIATE(T)                                                                                      \
  template class PointCloud<T>;                                                                                     \
  template struct GradientResult<T>;                                                                                \
  template struct ClarkeGenerators<T>;                                                                              \
  template ProjectionRecord<T> projection_set(const PointCloud<T>&, const Point<T>&);                                \
  template GradientResult<T> generalized_gradient(const PointCloud<T>&, const Point<T>&);                            \
  template ClarkeGenerators<T> clarke_generators(const PointCloud<T>&, const Point<T>&);                             \
  template Classification<T> classify(const PointCloud<T>&, const Point<T>&);                                        \
  template bool record_less(const CriticalPointRecord<T>&, const CriticalPointRecord<T>&);                           \
  template std::vector<CriticalPointRecord<T>> enumerate_critical(const PointCloud<T>&, const EnumerationOptions&);

DMORSE_INSTANTIATE(Rational)
DMORSE_INSTANTIATE(double)

#undef DMORSE_INSTANTIATE

}  // namespace dmorse
