#include "dmorse/convex.hpp"

#include <algorithm>
#include <list>
#include <string>

#include "dmorse/lp.hpp"

namespace dmorse {
namespace {

template <class T>
void check_dimensions(const std::vector<Point<T>>& S, std::size_t n, const char* who) {
  for (const auto& p : S)
    if (p.size() != n) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

template <class T>
HullMembership<T> conv_contains(const std::vector<Point<T>>& S, const Point<T>& z, const Tolerance& tol) {
  if (S.empty()) throw std::invalid_argument("conv_contains: empty point set");
  const std::size_t n = z.size();
  check_dimensions(S, n, "conv_contains");
  const std::size_t k = S.size();

  LinearProgram<T> lp;
  lp.objective.assign(k, T(0));
  for (std::size_t d = 0; d < n; ++d) {
    Constraint<T> row{Vec<T>(k), Relation::Equal, z[d]};
    for (std::size_t i = 0; i < k; ++i) row.coeffs[i] = S[i][d];
    lp.constraints.push_back(std::move(row));
  }
  lp.constraints.push_back({Vec<T>(k, T(1)), Relation::Equal, T(1)});

  auto res = solve_lp(lp, tol);
  HullMembership<T> out;
  if (res.status == LPStatus::Optimal) {
    out.inside = true;
    out.coefficients = std::move(res.primal);
  }
  return out;
}

template <class T>
MinNormResult<T> min_norm_point(const std::vector<Point<T>>& S, const Point<T>& z, const Tolerance& tol) {
  if (S.empty()) throw std::invalid_argument("min_norm_point: empty point set");
  const std::size_t n = z.size();
  check_dimensions(S, n, "min_norm_point");

  std::vector<Vec<T>> P;
  P.reserve(S.size());
  for (const auto& s : S) P.push_back(sub(s, z));

  auto combine = [&](const std::vector<std::size_t>& idx, const Vec<T>& w) {
    Vec<T> x(n, T(0));
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t d = 0; d < n; ++d) x[d] += w[i] * P[idx[i]][d];
    return x;
  };

  std::size_t start = 0;
  for (std::size_t j = 1; j < P.size(); ++j)
    if (compare(squared_norm(P[j]), squared_norm(P[start]), tol) < 0) start = j;
  std::vector<std::size_t> active{start};
  Vec<T> w{T(1)};
  Vec<T> x = P[start];

  // Exact arithmetic terminates finitely; the cap only guards float mode.
  const std::size_t max_iterations = 64 * (P.size() + n + 1);
  std::size_t iterations = 0;
  for (bool done = false; !done && iterations < max_iterations;) {
    // Major cycle: the point of P minimizing <x, p>.
    std::size_t j = 0;
    T best = dot(x, P[0]);
    for (std::size_t i = 1; i < P.size(); ++i) {
      T v = dot(x, P[i]);
      if (compare(v, best, tol) < 0) j = i, best = std::move(v);
    }
    if (compare(best, squared_norm(x), tol) >= 0) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    active.push_back(j);
    w.push_back(T(0));

    // Minor cycles: affine minimizer over the active set, clipped back into
    // the simplex until all its weights are positive.
    while (++iterations < max_iterations) {
      const std::size_t k = active.size();
      Matrix<T> M(k + 1, Vec<T>(k + 1, T(0)));
      Vec<T> rhs(k + 1, T(0));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) M[a][b] = dot(P[active[a]], P[active[b]]);
        M[a][k] = 1;
        M[k][a] = 1;
      }
      rhs[k] = 1;
      auto sol = solve_linear(M, rhs, tol);
      if (!sol) {
        done = true;
        break;
      }
      Vec<T> alpha(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(k));
      bool all_positive = true;
      for (const auto& a : alpha)
        if (sign_of(a, tol) <= 0) all_positive = false;
      if (all_positive) {
        w = std::move(alpha);
        x = combine(active, w);
        break;
      }
      std::optional<std::size_t> arg;
      T theta{1};
      for (std::size_t i = 0; i < k; ++i) {
        if (sign_of(alpha[i], tol) > 0) continue;
        T t = w[i] / (w[i] - alpha[i]);
        if (!arg || compare(t, theta, tol) < 0) arg = i, theta = t;
      }
      for (std::size_t i = 0; i < k; ++i) w[i] = theta * alpha[i] + (T(1) - theta) * w[i];
      w[*arg] = 0;
      std::vector<std::size_t> kept_idx;
      Vec<T> kept_w;
      for (std::size_t i = 0; i < k; ++i) {
        if (sign_of(w[i], tol) <= 0) continue;
        kept_idx.push_back(active[i]);
        kept_w.push_back(w[i]);
      }
      active = std::move(kept_idx);
      w = std::move(kept_w);
      x = combine(active, w);
    }
  }

  MinNormResult<T> out;
  out.sigma = add(z, x);
  out.coefficients.assign(S.size(), T(0));
  T total{0};
  for (const auto& v : w) total += v;
  for (std::size_t i = 0; i < active.size(); ++i) out.coefficients[active[i]] = w[i] / total;
  return out;
}

template <class T>
bool is_valid_certificate(const std::vector<Vec<T>>& a, const Vec<T>& v, const Tolerance& tol) {
  if (is_zero_vector(v, tol)) return false;
  for (const auto& ai : a)
    if (sign_of(dot(v, ai), tol) > 0) return false;
  auto extended = a;
  extended.push_back(v);
  return rank_and_basis(extended, tol).dim == rank_and_basis(a, tol).dim;
}

template <class T>
ConeTestResult<T> positive_span_test(const std::vector<Vec<T>>& a, const Tolerance& tol) {
  if (a.empty()) throw std::invalid_argument("positive_span_test: empty vector set");
  const std::size_t n = a.front().size();
  check_dimensions(a, n, "positive_span_test");
  const std::size_t k = a.size();

  // (1) relint LP over (lambda_1..lambda_k, t), t free.
  LinearProgram<T> relint;
  relint.objective.assign(k + 1, T(0));
  relint.objective[k] = 1;
  relint.bounds.assign(k + 1, VarBound::NonNegative);
  relint.bounds[k] = VarBound::Free;
  for (std::size_t d = 0; d < n; ++d) {
    Constraint<T> row{Vec<T>(k + 1, T(0)), Relation::Equal, T(0)};
    for (std::size_t i = 0; i < k; ++i) row.coeffs[i] = a[i][d];
    relint.constraints.push_back(std::move(row));
  }
  {
    Constraint<T> row{Vec<T>(k + 1, T(1)), Relation::Equal, T(1)};
    row.coeffs[k] = 0;
    relint.constraints.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < k; ++i) {
    Constraint<T> row{Vec<T>(k + 1, T(0)), Relation::GreaterEq, T(0)};
    row.coeffs[i] = 1;
    row.coeffs[k] = -1;
    relint.constraints.push_back(std::move(row));
  }
  const auto relint_res = solve_lp(relint, tol);
  const bool hull_contains_origin = relint_res.status == LPStatus::Optimal;
  const bool in_relint = hull_contains_origin && sign_of(relint_res.objective_value, tol) > 0;

  // (2) certificate LP over coordinates mu of v in a basis of Span(a).
  const auto span = rank_and_basis(a, tol);
  const std::size_t m = span.dim;
  std::vector<Vec<T>> gram(k, Vec<T>(m, T(0)));  // <b_j, a_i>
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j) gram[i][j] = dot(span.basis[j], a[i]);
  LinearProgram<T> cert;
  cert.objective.assign(m, T(0));
  cert.bounds.assign(m, VarBound::Free);
  Constraint<T> total{Vec<T>(m, T(0)), Relation::Equal, T(-1)};
  for (std::size_t i = 0; i < k; ++i) {
    cert.constraints.push_back({gram[i], Relation::LessEq, T(0)});
    for (std::size_t j = 0; j < m; ++j) total.coeffs[j] += gram[i][j];
  }
  cert.constraints.push_back(std::move(total));
  const auto cert_res = m == 0 ? LPOutcome<T>{} : solve_lp(cert, tol);
  const bool has_certificate = cert_res.status == LPStatus::Optimal;

  if (in_relint == has_certificate)
    throw ConeTestInconsistency(in_relint ? "positive_span_test: relint LP and certificate LP both succeed"
                                          : "positive_span_test: neither relint LP nor certificate LP succeeds");

  ConeTestResult<T> out;
  out.origin_outside_hull = !hull_contains_origin;
  if (in_relint) {
    out.outcome = ConeOutcome::PositivelySpans;
    out.margin = relint_res.objective_value;
    return out;
  }
  out.outcome = ConeOutcome::Certificate;
  out.certificate.assign(n, T(0));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t d = 0; d < n; ++d) out.certificate[d] += cert_res.primal[j] * span.basis[j][d];
  if (hull_contains_origin) out.margin = relint_res.objective_value;
  return out;
}

template <class T>
std::optional<Ball<T>> circumcenter_in_affine_hull(const std::vector<Point<T>>& S, const Tolerance& tol) {
  if (S.empty()) throw std::invalid_argument("circumcenter_in_affine_hull: empty point set");
  const std::size_t n = S.front().size();
  check_dimensions(S, n, "circumcenter_in_affine_hull");
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (vectors_equal(S[i], S[j], tol))
        throw std::invalid_argument("circumcenter_in_affine_hull: duplicate points");

  Ball<T> ball;
  for (std::size_t i = 0; i < S.size(); ++i) ball.support.push_back(i);
  if (S.size() == 1) {
    ball.center = S.front();
    return ball;
  }
  // c = x0 + sum mu_j d_j with 2 <d_i, c - x0> = |d_i|^2.
  const std::size_t k = S.size() - 1;
  std::vector<Vec<T>> d;
  d.reserve(k);
  for (std::size_t i = 1; i < S.size(); ++i) d.push_back(sub(S[i], S[0]));
  Matrix<T> M(k, Vec<T>(k));
  Vec<T> rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) M[i][j] = T(2) * dot(d[i], d[j]);
    rhs[i] = squared_norm(d[i]);
  }
  auto mu = solve_linear(M, rhs, tol);
  if (!mu) return std::nullopt;
  ball.center = S.front();
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t c = 0; c < n; ++c) ball.center[c] += (*mu)[j] * d[j][c];
  ball.squared_radius = squared_distance(ball.center, S.front());
  for (const auto& p : S)
    if (compare(squared_distance(ball.center, p), ball.squared_radius, tol) != 0) return std::nullopt;
  return ball;
}

namespace {

template <class T>
class WelzlSolver {
 public:
  WelzlSolver(const std::vector<Point<T>>& pts, const Tolerance& tol) : pts_(pts), tol_(tol) {
    for (std::size_t i = 0; i < pts.size(); ++i) order_.push_back(i);
  }

  Ball<T> run() {
    std::vector<std::size_t> boundary;
    auto ball = solve(order_.end(), boundary);
    return *ball;
  }

 private:
  using Iter = std::list<std::size_t>::iterator;

  bool contains(const std::optional<Ball<T>>& b, std::size_t i) const {
    return b && compare(squared_distance(b->center, pts_[i]), b->squared_radius, tol_) <= 0;
  }

  std::optional<Ball<T>> ball_through(const std::vector<std::size_t>& boundary) const {
    if (boundary.empty()) return std::nullopt;
    std::vector<Point<T>> support;
    for (auto i : boundary) support.push_back(pts_[i]);
    auto b = circumcenter_in_affine_hull(support, tol_);
    if (!b) throw std::runtime_error("min_enclosing_ball: degenerate support set");
    b->support = boundary;
    return b;
  }

  // Gärtner's move-to-front recursion over the prefix [begin, end).
  std::optional<Ball<T>> solve(Iter end, std::vector<std::size_t>& boundary) {
    auto ball = ball_through(boundary);
    if (boundary.size() == pts_.front().size() + 1) return ball;
    for (Iter it = order_.begin(); it != end;) {
      Iter next = std::next(it);
      if (!contains(ball, *it)) {
        boundary.push_back(*it);
        ball = solve(it, boundary);
        boundary.pop_back();
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
    return ball;
  }

  const std::vector<Point<T>>& pts_;
  Tolerance tol_;
  std::list<std::size_t> order_;
};

}  // namespace

template <class T>
Ball<T> min_enclosing_ball(const std::vector<Point<T>>& S, const Tolerance& tol) {
  if (S.empty()) throw std::invalid_argument("min_enclosing_ball: empty point set");
  check_dimensions(S, S.front().size(), "min_enclosing_ball");
  return WelzlSolver<T>(S, tol).run();
}

#define DMORSE_INSTANTIATE(T)                                                                                   \
  template HullMembership<T> conv_contains(const std::vector<Point<T>>&, const Point<T>&, const Tolerance&);     \
  template MinNormResult<T> min_norm_point(const std::vector<Point<T>>&, const Point<T>&, const Tolerance&);     \
  template ConeTestResult<T> positive_span_test(const std::vector<Vec<T>>&, const Tolerance&);                    \
  template bool is_valid_certificate(const std::vector<Vec<T>>&, const Vec<T>&, const Tolerance&);               \
  template std::optional<Ball<T>> circumcenter_in_affine_hull(const std::vector<Point<T>>&, const Tolerance&);   \
  template Ball<T> min_enclosing_ball(const std::vector<Point<T>>&, const Tolerance&);

DMORSE_INSTANTIATE(Rational)
DMORSE_INSTANTIATE(double)

#undef DMORSE_INSTANTIATE

}  // namespace dmorse
