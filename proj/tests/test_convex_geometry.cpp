#include <doctest.h>

#include <cmath>

#include "dmorse/convex.hpp"
#include "support/oracles.hpp"

using namespace dmorse;

namespace {
using Pts = std::vector<Point<Rational>>;

Pts square() { return {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}; }

template <class T>
bool in_hull_by_coefficients(const std::vector<Point<T>>& S, const Point<T>& z, const Vec<T>& lambda) {
  T total = 0;
  Point<T> acc(z.size(), T(0));
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (lambda[i] < 0) return false;
    total += lambda[i];
    for (std::size_t d = 0; d < z.size(); ++d) acc[d] += lambda[i] * S[i][d];
  }
  return total == 1 && acc == z;
}
}  // namespace

TEST_CASE("conv_contains examples") {
  auto a = conv_contains(square(), Point<Rational>{0, 0});
  REQUIRE(a.inside);
  CHECK(in_hull_by_coefficients(square(), {0, 0}, a.coefficients));
  CHECK_FALSE(conv_contains(Pts{{1, 0}, {0, 1}}, Point<Rational>{1, 1}).inside);
  Pts tri{{1, 0}, {-1, 0}, {0, 1}};
  auto c = conv_contains(tri, Point<Rational>{0, 0});
  REQUIRE(c.inside);
  CHECK(in_hull_by_coefficients(tri, {0, 0}, c.coefficients));
  CHECK_THROWS_AS(conv_contains(Pts{{1, 0}}, Point<Rational>{0, 0, 0}), std::invalid_argument);
}

TEST_CASE("min_norm_point examples") {
  CHECK(min_norm_point(Pts{{1, 0}, {0, 1}}, Point<Rational>{0, 0}).sigma == Point<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(min_norm_point(Pts{{3, 4}}, Point<Rational>{0, 0}).sigma == Point<Rational>{3, 4});

  // Dense grid over convex coefficients of {(2,0),(0,2),(2,2)} locates the
  // minimizer of |sigma|^2 near (1,1); the exact answer is frozen below.
  double best = 1e300, bx = 0, by = 0;
  const int steps = 400;
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      const double l1 = double(i) / steps, l2 = double(j) / steps, l3 = 1 - l1 - l2;
      const double x = 2 * l1 + 2 * l3, y = 2 * l2 + 2 * l3;
      if (x * x + y * y < best) best = x * x + y * y, bx = x, by = y;
    }
  CHECK(bx == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(by == doctest::Approx(1.0).epsilon(1e-2));
  auto r = min_norm_point(Pts{{2, 0}, {0, 2}, {2, 2}}, Point<Rational>{0, 0});
  CHECK(r.sigma == Point<Rational>{1, 1});
  CHECK(in_hull_by_coefficients(Pts{{2, 0}, {0, 2}, {2, 2}}, r.sigma, r.coefficients));
}

TEST_CASE("min_norm_point optimality on random sets") {
  oracle::Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 7));
    auto S = oracle::random_cloud(rng, n, k, 4, static_cast<long>(rng.uniform(1, 2)));
    Point<Rational> z(n);
    for (auto& c : z) c = oracle::frac(rng.uniform(-6, 6), 2);
    auto r = min_norm_point(S, z);
    REQUIRE(in_hull_by_coefficients(S, r.sigma, r.coefficients));
    const auto w = sub(z, r.sigma);
    for (const auto& x : S) CHECK(dot(w, sub(x, r.sigma)) <= 0);
  }
}

TEST_CASE("positive_span_test examples") {
  auto pair = positive_span_test(std::vector<Vec<Rational>>{{1, 0}, {-1, 0}});
  CHECK(pair.positively_spans());
  CHECK(pair.margin == Rational(1, 2));

  // One-degree sweep of unit directions: only -e2 (270 degrees) satisfies
  // <v, a_i> <= 0 for all three vectors.
  std::vector<Vec<Rational>> a{{1, 0}, {-1, 0}, {0, 1}};
  std::vector<int> valid_degrees;
  for (int deg = 0; deg < 360; ++deg) {
    double c = std::cos(deg * M_PI / 180), s = std::sin(deg * M_PI / 180);
    if (deg % 90 == 0) c = std::round(c), s = std::round(s);
    Vec<Rational> v{Rational(c), Rational(s)};
    bool ok = true;
    for (const auto& ai : a) ok = ok && dot(v, ai) <= 0;
    if (ok) valid_degrees.push_back(deg);
  }
  CHECK(valid_degrees == std::vector<int>{270});
  auto t = positive_span_test(a);
  REQUIRE(t.outcome == ConeOutcome::Certificate);
  CHECK(t.certificate[0] == 0);
  CHECK(t.certificate[1] < 0);
  CHECK(is_valid_certificate(a, t.certificate));
  CHECK_FALSE(t.origin_outside_hull);

  auto sq = positive_span_test(std::vector<Vec<Rational>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
  CHECK(sq.positively_spans());
  CHECK(sq.margin == Rational(1, 4));
}

TEST_CASE("positive_span_test flags an origin outside the hull") {
  auto r = positive_span_test(std::vector<Vec<Rational>>{{1, 0}, {1, 1}});
  CHECK(r.outcome == ConeOutcome::Certificate);
  CHECK(r.origin_outside_hull);
  CHECK(is_valid_certificate(std::vector<Vec<Rational>>{{1, 0}, {1, 1}}, r.certificate));
}

TEST_CASE("positive_span_test dichotomy on random sets") {
  oracle::Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 6));
    auto a = oracle::random_cloud(rng, n, k, 3, 1);
    // Half the time, append -sum so that 0 is in the hull.
    if (rng.uniform(0, 1)) {
      Vec<Rational> s(n, Rational(0));
      for (const auto& v : a) s = sub(s, v);
      if (!is_zero_vector(s)) a.push_back(s);
    }
    ConeTestResult<Rational> r;
    REQUIRE_NOTHROW(r = positive_span_test(a));
    const bool has_rays = !oracle::certificate_rays(a).empty();
    if (r.positively_spans()) {
      CHECK(r.margin > 0);
      CHECK_FALSE(has_rays);
    } else {
      CHECK(is_valid_certificate(a, r.certificate));
      CHECK(has_rays);
    }
  }
}

TEST_CASE("circumcenter_in_affine_hull examples") {
  auto a = circumcenter_in_affine_hull(Pts{{1, 0}, {-1, 0}});
  REQUIRE(a);
  CHECK(a->center == Point<Rational>{0, 0});
  CHECK(a->squared_radius == 1);
  CHECK_FALSE(circumcenter_in_affine_hull(Pts{{0, 0}, {1, 0}, {2, 0}}));
  auto sq = circumcenter_in_affine_hull(square());
  REQUIRE(sq);
  CHECK(sq->center == Point<Rational>{0, 0});
  CHECK(sq->squared_radius == 2);
  CHECK_THROWS_AS(circumcenter_in_affine_hull(Pts{{1, 2}, {1, 2}}), std::invalid_argument);

  // A triangle in R^3: the center stays in its plane.
  auto t = circumcenter_in_affine_hull(Pts{{0, 0, 1}, {2, 0, 1}, {0, 2, 1}});
  REQUIRE(t);
  CHECK(t->center == Point<Rational>{1, 1, 1});
}

TEST_CASE("circumcenters are equidistant on random subsets") {
  oracle::Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    auto S = oracle::random_cloud(rng, n, static_cast<std::size_t>(rng.uniform(1, 4)), 3, 1);
    auto b = circumcenter_in_affine_hull(S);
    if (!b) continue;
    for (const auto& x : S) CHECK(squared_distance(b->center, x) == b->squared_radius);
    auto aff = S;
    for (auto& p : aff) p = sub(p, S[0]);
    auto with_center = aff;
    with_center.push_back(sub(b->center, S[0]));
    CHECK(oracle::rank(with_center) == oracle::rank(aff));
  }
}

TEST_CASE("min_enclosing_ball examples") {
  auto a = min_enclosing_ball(Pts{{0, 0}, {2, 0}});
  CHECK(a.center == Point<Rational>{1, 0});
  CHECK(a.squared_radius == 1);
  // Obtuse triangle: (1,1) lies inside the diameter ball of (0,0),(4,0).
  auto b = min_enclosing_ball(Pts{{0, 0}, {4, 0}, {1, 1}});
  CHECK(b.center == Point<Rational>{2, 0});
  CHECK(b.squared_radius == 4);
  auto c = min_enclosing_ball(Pts{{1, 0}});
  CHECK(c.center == Point<Rational>{1, 0});
  CHECK(c.squared_radius == 0);
}

TEST_CASE("min_enclosing_ball encloses, is supported, and is minimal") {
  oracle::Rng rng(8080);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    auto S = oracle::random_cloud(rng, n, static_cast<std::size_t>(rng.uniform(1, 7)), 3, 1);
    auto ball = min_enclosing_ball(S);
    for (const auto& x : S) CHECK(squared_distance(ball.center, x) <= ball.squared_radius);
    CHECK(ball.support.size() <= n + 1);
    for (auto i : ball.support) CHECK(squared_distance(ball.center, S[i]) == ball.squared_radius);

    // Brute force over support candidates of size <= n + 1.
    std::optional<Rational> best;
    const std::size_t k = S.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) > n + 1) continue;
      Pts sub_set;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) sub_set.push_back(S[i]);
      auto cand = circumcenter_in_affine_hull(sub_set);
      if (!cand) continue;
      bool encloses = true;
      for (const auto& x : S) encloses = encloses && squared_distance(cand->center, x) <= cand->squared_radius;
      if (encloses && (!best || cand->squared_radius < *best)) best = cand->squared_radius;
    }
    REQUIRE(best);
    CHECK(ball.squared_radius == *best);
  }
}

TEST_CASE("float mode geometry agrees with exact on a generic instance") {
  std::vector<Point<double>> S{{2, 0}, {0, 2}, {2, 2}};
  auto r = min_norm_point(S, Point<double>{0, 0});
  CHECK(r.sigma[0] == doctest::Approx(1.0));
  CHECK(r.sigma[1] == doctest::Approx(1.0));
  auto b = min_enclosing_ball(std::vector<Point<double>>{{0, 0}, {4, 0}, {1, 1}});
  CHECK(b.squared_radius == doctest::Approx(4.0));
  CHECK(positive_span_test(std::vector<Vec<double>>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}).positively_spans());
}
