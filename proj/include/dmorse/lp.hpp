#pragma once

#include <cstddef>
#include <vector>

#include "dmorse/scalar.hpp"

namespace dmorse {

enum class Relation { LessEq, Equal, GreaterEq };
enum class VarBound { NonNegative, Free };

template <class T>
struct Constraint {
  Vec<T> coeffs;
  Relation relation = Relation::LessEq;
  T rhs = T(0);
};

/// maximize objective . x  subject to the constraint rows and per-variable
/// lower bounds (0 or -inf). An empty `bounds` means all variables >= 0.
template <class T>
struct LinearProgram {
  Vec<T> objective;
  std::vector<Constraint<T>> constraints;
  std::vector<VarBound> bounds;

  std::size_t num_vars() const { return objective.size(); }
  VarBound bound(std::size_t j) const { return bounds.empty() ? VarBound::NonNegative : bounds[j]; }
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

template <class T>
struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Vec<T> primal;         // set when Optimal
  T objective_value{0};  // set when Optimal
};

/// Two-phase dense simplex with Bland's rule. Exact over Rational;
/// pivots and sign tests use the tolerance for double.
template <class T>
LPOutcome<T> solve_lp(const LinearProgram<T>& lp, const Tolerance& tol = {});

/// True if x satisfies every row and bound of lp (exact for Rational).
template <class T>
bool satisfies(const LinearProgram<T>& lp, const Vec<T>& x, const Tolerance& tol = {});

}  // namespace dmorse
