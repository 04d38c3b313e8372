#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dmorse {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Mode { Exact, Float };

// Absolute/relative tolerance pair used by every Float-mode comparison.
// Exact-mode code paths ignore it.
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-9;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
using Vec = std::vector<T>;

template <class T>
using Point = std::vector<T>;

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::Exact;
  static int sign(const Rational& x, const Tolerance&) { return sgn(x); }
  static int compare(const Rational& a, const Rational& b, const Tolerance&) {
    return cmp(a, b);
  }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational to_rational(const Rational& x) { return x; }
  static Rational from_rational(const Rational& x) { return x; }
  static Rational abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }
};

template <>
struct NumTraits<double> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::Float;
  static int sign(double x, const Tolerance& tol) {
    if (std::fabs(x) <= tol.abs) return 0;
    return x > 0 ? 1 : -1;
  }
  // Equality band scales with the larger magnitude.
  static int compare(double a, double b, const Tolerance& tol) {
    const double band = tol.abs + tol.rel * std::max(std::fabs(a), std::fabs(b));
    if (std::fabs(a - b) <= band) return 0;
    return a < b ? -1 : 1;
  }
  static double to_double(double x) { return x; }
  static Rational to_rational(double x) { return Rational(x); }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static double abs(double x) { return std::fabs(x); }
};

template <class T>
int sign_of(const T& x, const Tolerance& tol = {}) {
  return NumTraits<T>::sign(x, tol);
}

template <class T>
int compare(const T& a, const T& b, const Tolerance& tol = {}) {
  return NumTraits<T>::compare(a, b, tol);
}

template <class T>
bool is_zero(const T& x, const Tolerance& tol = {}) {
  return sign_of(x, tol) == 0;
}

/// Parses an integer, "p/q" fraction, or decimal literal (optional exponent)
/// into an exact rational. Decimals are never rounded: "0.25" is 1/4.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form with q > 0 and gcd(p, q) = 1; integers carry "/1".
std::string to_exact_string(const Rational& x);

/// Dual-mode scalar. Arithmetic between values of different modes throws.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational v) : value_(std::move(v)) {}
  explicit Scalar(double v) : value_(v) {}

  Mode mode() const { return value_.index() == 0 ? Mode::Exact : Mode::Float; }
  const Rational& exact() const;
  double as_float() const;
  double to_double() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  /// Three-way comparison; Float mode uses the tolerance band.
  int compare(const Scalar& other, const Tolerance& tol = {}) const;
  bool operator==(const Scalar& other) const { return compare(other) == 0; }

 private:
  std::variant<Rational, double> value_;
};

Scalar parse_scalar(std::string_view text, Mode mode);

template <class T>
T parse_as(std::string_view text) {
  if constexpr (NumTraits<T>::exact) {
    return parse_rational(text);
  } else {
    return parse_scalar(text, Mode::Float).as_float();
  }
}

// Small vector helpers shared by the geometry modules.

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec<T> sub(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
Vec<T> add(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
Vec<T> scale(const Vec<T>& a, const T& s) {
  Vec<T> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

template <class T>
T squared_norm(const Vec<T>& a) {
  return dot(a, a);
}

template <class T>
T squared_distance(const Vec<T>& a, const Vec<T>& b) {
  return squared_norm(sub(a, b));
}

template <class T>
bool is_zero_vector(const Vec<T>& a, const Tolerance& tol = {}) {
  for (const auto& x : a)
    if (!is_zero(x, tol)) return false;
  return true;
}

template <class T>
bool vectors_equal(const Vec<T>& a, const Vec<T>& b, const Tolerance& tol = {}) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (compare(a[i], b[i], tol) != 0) return false;
  return true;
}

template <class T>
std::vector<double> to_doubles(const Vec<T>& a) {
  std::vector<double> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(NumTraits<T>::to_double(x));
  return r;
}

}  // namespace dmorse
