// Shared point-cloud fixtures and seeded generators for the test binaries.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "dmorse/morse.hpp"
#include "support/oracles.hpp"

namespace fixture {

using dmorse::Point;
using dmorse::Rational;
using Pts = std::vector<Point<Rational>>;

inline Pts square() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }
inline Pts collinear4() { return {{0, 0}, {1, 0}, {2, 0}, {3, 0}}; }
inline Pts two_point() { return {{-1, 0}, {1, 0}}; }
// Obtuse-at-apex triangle: (0,0) is differential critical but regular.
inline Pts tee() { return {{-1, 0}, {1, 0}, {0, 1}}; }
inline Pts triangle() {
  return {{1, 0}, {oracle::frac(-1, 2), oracle::frac(866, 1000)}, {oracle::frac(-1, 2), oracle::frac(-866, 1000)}};
}
// Circumcenter of triangle(): the rational approximation is not cocircular
// about the origin.
inline Point<Rational> triangle_center() { return {oracle::frac(11, 750000), 0}; }

// The seeded random clouds: n in {2,3}, 2..7 points, coordinates on small
// grids so that ties and cocircularities actually occur.
inline std::vector<Pts> random_clouds(std::size_t count, std::uint64_t seed = 20240611) {
  oracle::Rng rng(seed);
  std::vector<Pts> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t n = (i % 2 == 0) ? 2 : 3;
    std::size_t k = static_cast<std::size_t>(rng.uniform(2, 7));
    long den = rng.uniform(1, 3);
    out.push_back(oracle::random_cloud(rng, n, k, 3 * den, den));
  }
  return out;
}

// Signed permutation, then positive scaling, then translation.
struct Transform {
  std::vector<std::size_t> perm;
  std::vector<int> sign;
  Rational scale{1};
  Point<Rational> shift;

  Point<Rational> apply(const Point<Rational>& p) const {
    Point<Rational> q(p.size());
    for (std::size_t d = 0; d < p.size(); ++d) q[d] = sign[d] * p[perm[d]] * scale + shift[d];
    return q;
  }
  Pts apply(const Pts& ps) const {
    Pts out;
    for (const auto& p : ps) out.push_back(apply(p));
    return out;
  }
};

inline Transform random_transform(oracle::Rng& rng, std::size_t n) {
  Transform t;
  t.perm.resize(n);
  std::iota(t.perm.begin(), t.perm.end(), 0);
  std::shuffle(t.perm.begin(), t.perm.end(), rng.gen);
  for (std::size_t d = 0; d < n; ++d) t.sign.push_back(rng.uniform(0, 1) ? 1 : -1);
  t.scale = oracle::frac(rng.uniform(1, 9), rng.uniform(1, 4));
  for (std::size_t d = 0; d < n; ++d) t.shift.push_back(rng.rational(5, 7));
  return t;
}

inline int morse_euler(const std::vector<dmorse::CriticalPointRecord<Rational>>& records) {
  int chi = 0;
  for (const auto& r : records)
    if (r.classification.is_topological_critical()) chi += (r.classification.index % 2 == 0) ? 1 : -1;
  return chi;
}

}  // namespace fixture
