#include "dmorse/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace dmorse {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// [sign] digits
Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("malformed number literal: '" + std::string(whole) + "'");
  Integer v(std::string(s), 10);
  return negative ? Integer(-v) : v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  const auto bad = [&] { return ParseError("malformed number literal: '" + std::string(whole) + "'"); };
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    s = s.substr(0, e);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    const char* first = exp_text.data();
    const char* last = first + exp_text.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (exp_text.empty() || ec != std::errc() || ptr != last) throw bad();
    if (exponent > 100000 || exponent < -100000) throw bad();
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw bad();
  if (!int_part.empty() && !all_digits(int_part)) throw bad();
  if (!frac_part.empty() && !all_digits(frac_part)) throw bad();

  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer numerator(digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent >= 0 ? Rational(numerator * ten_pow) : Rational(numerator, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty number literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = parse_integer(trim(s.substr(0, slash)), text);
    Integer q = parse_integer(trim(s.substr(slash + 1)), text);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s, text);
}

std::string to_exact_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

const Rational& Scalar::exact() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return *r;
  throw std::logic_error("Scalar: exact value requested from a Float-mode scalar");
}

double Scalar::as_float() const {
  if (const auto* d = std::get_if<double>(&value_)) return *d;
  throw std::logic_error("Scalar: float value requested from an Exact-mode scalar");
}

double Scalar::to_double() const {
  return std::visit([](const auto& v) { return NumTraits<std::decay_t<decltype(v)>>::to_double(v); }, value_);
}

std::string Scalar::to_string() const {
  if (mode() == Mode::Exact) return to_exact_string(exact());
  return to_exact_string(Rational(as_float()));
}

namespace {
template <class Op>
Scalar binary(const Scalar& a, const Scalar& b, Op op) {
  if (a.mode() != b.mode()) throw std::invalid_argument("Scalar: mixed-mode arithmetic");
  if (a.mode() == Mode::Exact) return Scalar(Rational(op(a.exact(), b.exact())));
  return Scalar(static_cast<double>(op(a.as_float(), b.as_float())));
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.mode() == Mode::Exact && b.exact() == 0) throw std::domain_error("Scalar: division by zero");
  return binary(a, b, [](const auto& x, const auto& y) { return x / y; });
}
Scalar operator-(const Scalar& a) {
  if (a.mode() == Mode::Exact) return Scalar(Rational(-a.exact()));
  return Scalar(-a.as_float());
}

int Scalar::compare(const Scalar& other, const Tolerance& tol) const {
  if (mode() != other.mode()) throw std::invalid_argument("Scalar: mixed-mode comparison");
  if (mode() == Mode::Exact) return dmorse::compare(exact(), other.exact(), tol);
  return dmorse::compare(as_float(), other.as_float(), tol);
}

Scalar parse_scalar(std::string_view text, Mode mode) {
  Rational r = parse_rational(text);
  if (mode == Mode::Exact) return Scalar(std::move(r));
  // Decimal literals go through strtod for round-to-nearest; mpq_get_d truncates.
  const std::string s(trim(text));
  if (s.find('/') == std::string::npos) return Scalar(std::strtod(s.c_str(), nullptr));
  return Scalar(r.get_num().get_d() / r.get_den().get_d());
}

}  // namespace dmorse
