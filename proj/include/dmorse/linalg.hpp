#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dmorse/scalar.hpp"

namespace dmorse {

template <class T>
using Matrix = std::vector<Vec<T>>;  // row-major

template <class T>
struct SpanBasis {
  std::size_t dim = 0;
  std::size_t ambient = 0;
  std::vector<Vec<T>> basis;
  // Positions in the input sequence of the vectors kept as basis.
  std::vector<std::size_t> source_indices;
};

/// Rank of a vector family and a basis of its span. The basis is the greedy
/// subsequence of input vectors that raise the rank, so the result is
/// deterministic in input order. Exact mode uses integer fraction-free
/// elimination with content reduction.
template <class T>
SpanBasis<T> rank_and_basis(const std::vector<Vec<T>>& vectors, const Tolerance& tol = {});

/// One solution of A x = b, or nullopt if the system is inconsistent.
/// Free variables are set to zero. Exact mode runs Bareiss elimination on
/// the integer-scaled augmented matrix.
template <class T>
std::optional<Vec<T>> solve_linear(const Matrix<T>& A, const Vec<T>& b, const Tolerance& tol = {});

/// Basis of { x : A x = 0 } for an r x cols matrix.
template <class T>
std::vector<Vec<T>> null_space(const Matrix<T>& A, std::size_t cols, const Tolerance& tol = {});

}  // namespace dmorse
