#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dmorse/linalg.hpp"
#include "dmorse/scalar.hpp"

namespace dmorse {

template <class T>
struct HullMembership {
  bool inside = false;
  Vec<T> coefficients;  // convex weights, one per input point, when inside
};

/// Decides z in Conv(S) by LP feasibility (lambda >= 0, sum = 1, sum lambda_i x_i = z).
template <class T>
HullMembership<T> conv_contains(const std::vector<Point<T>>& S, const Point<T>& z, const Tolerance& tol = {});

template <class T>
struct MinNormResult {
  Point<T> sigma;
  Vec<T> coefficients;  // convex weights realizing sigma, one per input point
};

/// Nearest point of Conv(S) to z, by Wolfe's min-norm-point algorithm on {x - z}.
template <class T>
MinNormResult<T> min_norm_point(const std::vector<Point<T>>& S, const Point<T>& z, const Tolerance& tol = {});

enum class ConeOutcome { PositivelySpans, Certificate };

template <class T>
struct ConeTestResult {
  ConeOutcome outcome = ConeOutcome::PositivelySpans;
  T margin{0};           // relint LP optimum t*, > 0 when PositivelySpans
  Vec<T> certificate;    // v when Certificate
  bool origin_outside_hull = false;  // 0 not in Conv(a): the caller's precondition failed

  bool positively_spans() const { return outcome == ConeOutcome::PositivelySpans; }
};

/// Thrown when the relint LP and the certificate LP disagree.
class ConeTestInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Decides whether the vectors a_i positively span their linear span, by two
/// independent LPs that must agree:
///   relint:      max t  s.t. sum lambda_i a_i = 0, sum lambda_i = 1, lambda_i >= t
///   certificate: v in Span(a), <v, a_i> <= 0 for all i, sum_i <v, a_i> = -1
template <class T>
ConeTestResult<T> positive_span_test(const std::vector<Vec<T>>& a, const Tolerance& tol = {});

/// v != 0, v in Span(a) and <v, a_i> <= 0 for every i.
template <class T>
bool is_valid_certificate(const std::vector<Vec<T>>& a, const Vec<T>& v, const Tolerance& tol = {});

template <class T>
struct Ball {
  Point<T> center;
  T squared_radius{0};
  std::vector<std::size_t> support;  // input indices lying on the boundary sphere
};

/// The point of Aff(S) equidistant from all of S, if any. Throws on duplicate points.
template <class T>
std::optional<Ball<T>> circumcenter_in_affine_hull(const std::vector<Point<T>>& S, const Tolerance& tol = {});

/// Smallest enclosing ball (Welzl, move-to-front, deterministic order).
template <class T>
Ball<T> min_enclosing_ball(const std::vector<Point<T>>& S, const Tolerance& tol = {});

}  // namespace dmorse
