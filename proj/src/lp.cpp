#include "dmorse/lp.hpp"

#include <optional>
#include <stdexcept>

namespace dmorse {

template <class T>
void LinearProgram<T>::validate() const {
  if (!bounds.empty() && bounds.size() != objective.size())
    throw std::invalid_argument("LinearProgram: bounds/objective size mismatch");
  for (const auto& c : constraints)
    if (c.coeffs.size() != objective.size())
      throw std::invalid_argument("LinearProgram: constraint row has wrong variable count");
}

namespace {

template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram<T>& lp, const Tolerance& tol) : tol_(tol) {
    const std::size_t n = lp.num_vars();
    // Structural columns: one per nonnegative variable, two per free one.
    for (std::size_t j = 0; j < n; ++j) {
      column_of_.push_back(structural_);
      structural_ += lp.bound(j) == VarBound::Free ? 2 : 1;
    }
    const std::size_t m = lp.constraints.size();
    std::size_t slacks = 0, artificials = 0;
    for (const auto& c : lp.constraints) {
      const Relation r = effective_relation(c);
      if (r != Relation::Equal) ++slacks;
      if (r != Relation::LessEq) ++artificials;
    }
    artificial_begin_ = structural_ + slacks;
    width_ = artificial_begin_ + artificials;
    rows_.assign(m, Vec<T>(width_ + 1, T(0)));
    basis_.assign(m, 0);

    std::size_t next_slack = structural_, next_art = artificial_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& c = lp.constraints[i];
      const bool flip = sign_of(c.rhs, tol_) < 0;
      const Relation r = effective_relation(c);
      auto& row = rows_[i];
      for (std::size_t j = 0; j < n; ++j) {
        const T a = flip ? T(-c.coeffs[j]) : c.coeffs[j];
        row[column_of_[j]] = a;
        if (lp.bound(j) == VarBound::Free) row[column_of_[j] + 1] = -a;
      }
      row[width_] = flip ? T(-c.rhs) : c.rhs;
      if (r == Relation::LessEq) {
        row[next_slack] = 1;
        basis_[i] = next_slack++;
      } else {
        if (r == Relation::GreaterEq) row[next_slack++] = -1;
        row[next_art] = 1;
        basis_[i] = next_art++;
      }
    }
  }

  LPOutcome<T> solve(const LinearProgram<T>& lp) {
    LPOutcome<T> out;
    if (width_ > artificial_begin_) {
      Vec<T> phase1(width_, T(0));
      for (std::size_t j = artificial_begin_; j < width_; ++j) phase1[j] = -1;
      run(phase1, width_);  // bounded: the objective is <= 0
      if (sign_of(objective(phase1), tol_) < 0) return out;
      drive_out_artificials();
    }
    Vec<T> cost(width_, T(0));
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      cost[column_of_[j]] = lp.objective[j];
      if (lp.bound(j) == VarBound::Free) cost[column_of_[j] + 1] = -lp.objective[j];
    }
    if (!run(cost, artificial_begin_)) {
      out.status = LPStatus::Unbounded;
      return out;
    }
    Vec<T> std_x(width_, T(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) std_x[basis_[i]] = rows_[i][width_];
    out.primal.assign(lp.num_vars(), T(0));
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      out.primal[j] = std_x[column_of_[j]];
      if (lp.bound(j) == VarBound::Free) out.primal[j] -= std_x[column_of_[j] + 1];
    }
    out.objective_value = dot(lp.objective, out.primal);
    out.status = LPStatus::Optimal;
    return out;
  }

 private:
  // Relation after the row is negated to make its right-hand side >= 0.
  Relation effective_relation(const Constraint<T>& c) const {
    if (sign_of(c.rhs, tol_) >= 0 || c.relation == Relation::Equal) return c.relation;
    return c.relation == Relation::LessEq ? Relation::GreaterEq : Relation::LessEq;
  }

  T objective(const Vec<T>& cost) const {
    T v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) v += cost[basis_[i]] * rows_[i][width_];
    return v;
  }

  // Maximizes cost over columns [0, limit); returns false when unbounded.
  bool run(const Vec<T>& cost, std::size_t limit) {
    for (;;) {
      // Bland: lowest-index column with positive reduced cost enters.
      std::optional<std::size_t> entering;
      std::vector<bool> is_basic(width_, false);
      for (auto b : basis_) is_basic[b] = true;
      for (std::size_t j = 0; j < limit && !entering; ++j) {
        if (is_basic[j]) continue;
        T d = cost[j];
        for (std::size_t i = 0; i < rows_.size(); ++i)
          if (!is_zero(rows_[i][j], tol_)) d -= cost[basis_[i]] * rows_[i][j];
        if (sign_of(d, tol_) > 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t e = *entering;

      // Ratio test; ties go to the lowest-index basic variable.
      std::optional<std::size_t> leave;
      T best{0};
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sign_of(rows_[i][e], tol_) <= 0) continue;
        T ratio = rows_[i][width_] / rows_[i][e];
        if (!leave) {
          leave = i;
          best = ratio;
          continue;
        }
        const int c = compare(ratio, best, tol_);
        if (c < 0 || (c == 0 && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, e);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = rows_[r];
    const T p = prow[c];
    for (auto& v : prow) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const T f = rows_[i][c];
      if (is_zero(f, tol_)) continue;
      for (std::size_t j = 0; j <= width_; ++j)
        if (!is_zero(prow[j], tol_)) rows_[i][j] -= f * prow[j];
      rows_[i][c] = 0;
    }
    basis_[r] = c;
  }

  // Artificials still basic after phase 1 sit at level zero; pivot them out
  // or drop their (redundant) rows.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < artificial_begin_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < artificial_begin_ && !col; ++j)
        if (!is_zero(rows_[i][j], tol_)) col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  Tolerance tol_;
  std::vector<std::size_t> column_of_;
  std::size_t structural_ = 0;
  std::size_t artificial_begin_ = 0;
  std::size_t width_ = 0;
  std::vector<Vec<T>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

template <class T>
LPOutcome<T> solve_lp(const LinearProgram<T>& lp, const Tolerance& tol) {
  lp.validate();
  Tableau<T> tableau(lp, tol);
  return tableau.solve(lp);
}

template <class T>
bool satisfies(const LinearProgram<T>& lp, const Vec<T>& x, const Tolerance& tol) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (lp.bound(j) == VarBound::NonNegative && sign_of(x[j], tol) < 0) return false;
  for (const auto& c : lp.constraints) {
    const int s = compare(dot(c.coeffs, x), c.rhs, tol);
    if ((c.relation == Relation::LessEq && s > 0) || (c.relation == Relation::GreaterEq && s < 0) ||
        (c.relation == Relation::Equal && s != 0))
      return false;
  }
  return true;
}

template struct LinearProgram<Rational>;
template struct LinearProgram<double>;
template LPOutcome<Rational> solve_lp(const LinearProgram<Rational>&, const Tolerance&);
template LPOutcome<double> solve_lp(const LinearProgram<double>&, const Tolerance&);
template bool satisfies(const LinearProgram<Rational>&, const Vec<Rational>&, const Tolerance&);
template bool satisfies(const LinearProgram<double>&, const Vec<double>&, const Tolerance&);

}  // namespace dmorse
