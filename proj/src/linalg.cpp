#include "dmorse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmorse {
namespace {

// Multiplies a rational row by the lcm of its denominators.
std::vector<Integer> integer_row(const Vec<Rational>& row) {
  Integer l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = row[i].get_num() * (l / row[i].get_den());
  return out;
}

void remove_content(std::vector<Integer>& row) {
  Integer g = 0;
  for (const auto& x : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::optional<std::size_t> first_nonzero(const std::vector<Integer>& row) {
  for (std::size_t i = 0; i < row.size(); ++i)
    if (sgn(row[i]) != 0) return i;
  return std::nullopt;
}

SpanBasis<Rational> rank_and_basis_exact(const std::vector<Vec<Rational>>& vectors) {
  SpanBasis<Rational> out;
  out.ambient = vectors.empty() ? 0 : vectors.front().size();
  std::vector<std::vector<Integer>> echelon;
  std::vector<std::size_t> pivots;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != out.ambient) throw std::invalid_argument("rank_and_basis: dimension mismatch");
    auto v = integer_row(vectors[k]);
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const std::size_t p = pivots[r];
      if (sgn(v[p]) == 0) continue;
      const Integer a = echelon[r][p];
      const Integer b = v[p];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * v[j] - b * echelon[r][j];
      remove_content(v);
    }
    if (auto p = first_nonzero(v)) {
      echelon.push_back(std::move(v));
      pivots.push_back(*p);
      out.basis.push_back(vectors[k]);
      out.source_indices.push_back(k);
    }
  }
  out.dim = out.basis.size();
  return out;
}

SpanBasis<double> rank_and_basis_float(const std::vector<Vec<double>>& vectors, const Tolerance& tol) {
  SpanBasis<double> out;
  out.ambient = vectors.empty() ? 0 : vectors.front().size();
  std::vector<Vec<double>> echelon;
  std::vector<std::size_t> pivots;
  for (std::size_t k = 0; k < vectors.size(); ++k) {
    if (vectors[k].size() != out.ambient) throw std::invalid_argument("rank_and_basis: dimension mismatch");
    Vec<double> v = vectors[k];
    const double norm0 = std::sqrt(squared_norm(v));
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const double f = v[pivots[r]] / echelon[r][pivots[r]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon[r][j];
      v[pivots[r]] = 0.0;
    }
    std::size_t p = 0;
    double best = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (std::fabs(v[j]) > best) best = std::fabs(v[j]), p = j;
    if (best > tol.abs + tol.rel * norm0 && best > 0.0) {
      echelon.push_back(std::move(v));
      pivots.push_back(p);
      out.basis.push_back(vectors[k]);
      out.source_indices.push_back(k);
    }
  }
  out.dim = out.basis.size();
  return out;
}

std::optional<Vec<Rational>> solve_linear_exact(const Matrix<Rational>& A, const Vec<Rational>& b) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A.front().size();
  if (b.size() != rows) throw std::invalid_argument("solve_linear: dimension mismatch");
  std::vector<std::vector<Integer>> M;
  M.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (A[i].size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");
    Vec<Rational> aug = A[i];
    aug.push_back(b[i]);
    M.push_back(integer_row(aug));
  }

  // Bareiss forward elimination; skipped columns are free variables.
  Integer prev = 1;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    while (piv < rows && sgn(M[piv][col]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(M[row], M[piv]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j <= cols; ++j) {
        Integer t = M[row][col] * M[i][j] - M[i][col] * M[row][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][col] = 0;
    }
    prev = M[row][col];
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (sgn(M[i][cols]) != 0) return std::nullopt;

  Vec<Rational> x(cols, Rational(0));
  for (std::size_t k = pivot_cols.size(); k-- > 0;) {
    const std::size_t c = pivot_cols[k];
    Rational acc(M[k][cols]);
    for (std::size_t j = c + 1; j < cols; ++j)
      if (sgn(M[k][j]) != 0) acc -= Rational(M[k][j]) * x[j];
    x[c] = acc / Rational(M[k][c]);
  }
  return x;
}

double max_abs(const Matrix<double>& A) {
  double m = 0.0;
  for (const auto& r : A)
    for (double v : r) m = std::max(m, std::fabs(v));
  return m;
}

std::optional<Vec<double>> solve_linear_float(const Matrix<double>& A, const Vec<double>& b, const Tolerance& tol) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows == 0 ? 0 : A.front().size();
  if (b.size() != rows) throw std::invalid_argument("solve_linear: dimension mismatch");
  Matrix<double> M(rows);
  double bmax = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (A[i].size() != cols) throw std::invalid_argument("solve_linear: ragged matrix");
    M[i] = A[i];
    M[i].push_back(b[i]);
    bmax = std::max(bmax, std::fabs(b[i]));
  }
  const double eps = tol.abs + tol.rel * max_abs(A);
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    for (std::size_t i = row + 1; i < rows; ++i)
      if (std::fabs(M[i][col]) > std::fabs(M[piv][col])) piv = i;
    if (std::fabs(M[piv][col]) <= eps) continue;
    std::swap(M[row], M[piv]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      const double f = M[i][col] / M[row][col];
      for (std::size_t j = col; j <= cols; ++j) M[i][j] -= f * M[row][j];
      M[i][col] = 0.0;
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < rows; ++i)
    if (std::fabs(M[i][cols]) > tol.abs + tol.rel * (1.0 + bmax) * std::max(1.0, max_abs(A))) return std::nullopt;

  Vec<double> x(cols, 0.0);
  for (std::size_t k = pivot_cols.size(); k-- > 0;) {
    const std::size_t c = pivot_cols[k];
    double acc = M[k][cols];
    for (std::size_t j = c + 1; j < cols; ++j) acc -= M[k][j] * x[j];
    x[c] = acc / M[k][c];
  }
  return x;
}

}  // namespace

template <class T>
SpanBasis<T> rank_and_basis(const std::vector<Vec<T>>& vectors, const Tolerance& tol) {
  if constexpr (NumTraits<T>::exact) {
    return rank_and_basis_exact(vectors);
  } else {
    return rank_and_basis_float(vectors, tol);
  }
}

template <class T>
std::optional<Vec<T>> solve_linear(const Matrix<T>& A, const Vec<T>& b, const Tolerance& tol) {
  if constexpr (NumTraits<T>::exact) {
    return solve_linear_exact(A, b);
  } else {
    return solve_linear_float(A, b, tol);
  }
}

template SpanBasis<Rational> rank_and_basis(const std::vector<Vec<Rational>>&, const Tolerance&);
template SpanBasis<double> rank_and_basis(const std::vector<Vec<double>>&, const Tolerance&);
template std::optional<Vec<Rational>> solve_linear(const Matrix<Rational>&, const Vec<Rational>&, const Tolerance&);
template std::optional<Vec<double>> solve_linear(const Matrix<double>&, const Vec<double>&, const Tolerance&);

template <class T>
std::vector<Vec<T>> null_space(const Matrix<T>& A, std::size_t cols, const Tolerance& tol) {
  // Reduced row echelon form, then one basis vector per free column.
  Matrix<T> M = A;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < M.size(); ++col) {
    std::size_t piv = M.size();
    for (std::size_t i = row; i < M.size(); ++i) {
      if (M[i].size() != cols) throw std::invalid_argument("null_space: ragged matrix");
      if (is_zero(M[i][col], tol)) continue;
      if (piv == M.size() || NumTraits<T>::abs(M[i][col]) > NumTraits<T>::abs(M[piv][col])) piv = i;
      if constexpr (NumTraits<T>::exact) break;
    }
    if (piv == M.size()) continue;
    std::swap(M[row], M[piv]);
    const T p = M[row][col];
    for (auto& v : M[row]) v /= p;
    for (std::size_t i = 0; i < M.size(); ++i) {
      if (i == row || is_zero(M[i][col], tol)) continue;
      const T f = M[i][col];
      for (std::size_t j = 0; j < cols; ++j) M[i][j] -= f * M[row][j];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<Vec<T>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<T> v(cols, T(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -M[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

template std::vector<Vec<Rational>> null_space(const Matrix<Rational>&, std::size_t, const Tolerance&);
template std::vector<Vec<double>> null_space(const Matrix<double>&, std::size_t, const Tolerance&);

}  // namespace dmorse
