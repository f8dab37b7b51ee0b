#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ctxkit/rational.hpp"

namespace ctxkit {

enum class RowSense { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Row-sparse linear program. Variables have lower bound 0 unless
/// `lower_bounds` is filled; senses apply row-wise.
template <typename Scalar>
struct LinearProgramT {
  struct Entry {
    int col;
    Scalar coef;
  };

  bool maximize = true;
  std::vector<Scalar> objective;
  std::vector<std::vector<Entry>> rows;
  std::vector<Scalar> rhs;
  std::vector<RowSense> senses;
  std::vector<Scalar> lower_bounds;  // empty means all zero

  int num_vars() const { return int(objective.size()); }
  int num_rows() const { return int(rows.size()); }

  void add_row(std::vector<Entry> entries, RowSense sense, Scalar b) {
    for (const auto& e : entries)
      if (e.col < 0 || e.col >= num_vars())
        throw std::invalid_argument("LP row references column out of range");
    rows.push_back(std::move(entries));
    senses.push_back(sense);
    rhs.push_back(b);
  }
};

template <typename Scalar>
struct LpSolutionT {
  LpStatus status = LpStatus::Optimal;
  Scalar value{0};
  std::vector<Scalar> x;
};

using LinearProgram = LinearProgramT<double>;
using LpSolution = LpSolutionT<double>;
using ExactLinearProgram = LinearProgramT<Rational>;
using ExactLpSolution = LpSolutionT<Rational>;

namespace lp_detail {

inline bool less_than(double a, double b, double tol) { return a < b - tol; }
inline bool less_than(const Rational& a, const Rational& b, double) { return a < b; }

template <typename Scalar>
Scalar scalar_tol();
template <>
inline double scalar_tol<double>() { return 1e-9; }
template <>
inline Rational scalar_tol<Rational>() { return Rational(0); }

}  // namespace lp_detail

/// Dense two-phase tableau simplex with Bland's rule throughout: slow but
/// deterministic and, over Rational, exact. Intended for paper-sized
/// instances; the double-precision revised simplex handles anything larger.
template <typename Scalar>
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgramT<Scalar>& lp, std::int64_t max_pivots = 1000000)
      : max_pivots_(max_pivots) {
    build(lp);
  }

  LpSolutionT<Scalar> solve() {
    // Phase 1: minimise the artificial total. In canonical form the cost
    // row's rhs entry holds minus the current objective value.
    if (num_artificial_ > 0) {
      set_phase1_costs();
      run();
      if (lp_detail::less_than(objective_row_[cols_ - 1], Scalar{0}, 1e-7))
        return {LpStatus::Infeasible, Scalar{0}, {}};
      drive_out_artificials();
    }
    set_phase2_costs();
    if (!run()) return {LpStatus::Unbounded, Scalar{0}, {}};
    return extract();
  }

 private:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  void build(const LinearProgramT<Scalar>& lp) {
    const int n = lp.num_vars();
    const int m = lp.num_rows();
    maximize_ = lp.maximize;
    num_structural_ = n;
    shift_ = lp.lower_bounds.empty() ? std::vector<Scalar>(std::size_t(n), Scalar{0})
                                     : lp.lower_bounds;
    if (int(shift_.size()) != n)
      throw std::invalid_argument("lower_bounds size mismatch");
    costs_.assign(std::size_t(n), Scalar{0});
    for (int j = 0; j < n; ++j) costs_[std::size_t(j)] = lp.objective[std::size_t(j)];

    // Shifted rhs; flip rows to make it nonnegative.
    std::vector<Scalar> b(std::size_t(m));
    std::vector<RowSense> senses = lp.senses;
    std::vector<std::vector<typename LinearProgramT<Scalar>::Entry>> rows = lp.rows;
    for (int i = 0; i < m; ++i) {
      Scalar v = lp.rhs[std::size_t(i)];
      for (const auto& e : rows[std::size_t(i)])
        v -= e.coef * shift_[std::size_t(e.col)];
      if (lp_detail::less_than(v, Scalar{0}, 0.0)) {
        v = -v;
        for (auto& e : rows[std::size_t(i)]) e.coef = -e.coef;
        if (senses[std::size_t(i)] == RowSense::LessEq)
          senses[std::size_t(i)] = RowSense::GreaterEq;
        else if (senses[std::size_t(i)] == RowSense::GreaterEq)
          senses[std::size_t(i)] = RowSense::LessEq;
      }
      b[std::size_t(i)] = v;
    }

    int num_slack = 0;
    for (auto s : senses)
      if (s != RowSense::Equal) ++num_slack;
    num_artificial_ = 0;
    for (int i = 0; i < m; ++i)
      if (senses[std::size_t(i)] != RowSense::LessEq) ++num_artificial_;

    cols_ = n + num_slack + num_artificial_ + 1;  // + rhs column
    rows_ = m;
    first_artificial_ = n + num_slack;
    tableau_ = Mat::Constant(m, cols_, Scalar{0});
    basis_.assign(std::size_t(m), -1);

    int slack_at = n;
    int art_at = first_artificial_;
    for (int i = 0; i < m; ++i) {
      for (const auto& e : rows[std::size_t(i)]) tableau_(i, e.col) += e.coef;
      tableau_(i, cols_ - 1) = b[std::size_t(i)];
      switch (senses[std::size_t(i)]) {
        case RowSense::LessEq:
          tableau_(i, slack_at) = Scalar{1};
          basis_[std::size_t(i)] = slack_at++;
          break;
        case RowSense::GreaterEq:
          tableau_(i, slack_at++) = Scalar{-1};
          tableau_(i, art_at) = Scalar{1};
          basis_[std::size_t(i)] = art_at++;
          break;
        case RowSense::Equal:
          tableau_(i, art_at) = Scalar{1};
          basis_[std::size_t(i)] = art_at++;
          break;
      }
    }
  }

  void set_phase1_costs() {
    objective_row_ = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Constant(cols_, Scalar{0});
    for (int j = first_artificial_; j < cols_ - 1; ++j) objective_row_[j] = Scalar{1};
    canonicalize_cost_row();
    phase1_ = true;
  }

  void set_phase2_costs() {
    objective_row_ = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>::Constant(cols_, Scalar{0});
    for (int j = 0; j < num_structural_; ++j)
      objective_row_[j] = maximize_ ? -costs_[std::size_t(j)] : costs_[std::size_t(j)];
    canonicalize_cost_row();
    phase1_ = false;
  }

  void canonicalize_cost_row() {
    for (int i = 0; i < rows_; ++i) {
      int bj = basis_[std::size_t(i)];
      Scalar c = objective_row_[bj];
      if (!(c == Scalar{0})) objective_row_ -= c * tableau_.row(i);
    }
  }

  // Bland: entering = lowest-index negative reduced cost, leaving = lowest
  // basic index among minimum ratios. Artificials never re-enter. Returns
  // false on unboundedness.
  bool run() {
    const double tol = std::is_same_v<Scalar, Rational> ? 0.0 : 1e-11;
    for (std::int64_t pivot = 0; pivot < max_pivots_; ++pivot) {
      int enter = -1;
      for (int j = 0; j < first_artificial_; ++j) {
        if (lp_detail::less_than(objective_row_[j], Scalar{0}, tol)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;  // optimal
      int leave = -1;
      Scalar best_ratio{0};
      for (int i = 0; i < rows_; ++i) {
        if (!lp_detail::less_than(Scalar{0}, tableau_(i, enter), tol)) continue;
        Scalar ratio = tableau_(i, cols_ - 1) / tableau_(i, enter);
        if (leave < 0 || lp_detail::less_than(ratio, best_ratio, 0.0) ||
            (!lp_detail::less_than(best_ratio, ratio, 0.0) &&
             basis_[std::size_t(i)] < basis_[std::size_t(leave)]))
          leave = i, best_ratio = ratio;
      }
      if (leave < 0) return false;  // unbounded
      pivot_on(leave, enter);
    }
    throw std::runtime_error("simplex: pivot cap exceeded (1e6)");
  }

  void pivot_on(int row, int col) {
    Scalar p = tableau_(row, col);
    tableau_.row(row) /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      Scalar f = tableau_(i, col);
      if (!(f == Scalar{0})) tableau_.row(i) -= f * tableau_.row(row);
    }
    Scalar f = objective_row_[col];
    if (!(f == Scalar{0})) objective_row_ -= f * tableau_.row(row);
    basis_[std::size_t(row)] = col;
  }

  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[std::size_t(i)] < first_artificial_) continue;
      int col = -1;
      for (int j = 0; j < first_artificial_; ++j)
        if (!(tableau_(i, j) == Scalar{0})) {
          col = j;
          break;
        }
      if (col >= 0) pivot_on(i, col);
      // else: redundant row, its artificial stays basic at value 0
    }
  }

  LpSolutionT<Scalar> extract() const {
    LpSolutionT<Scalar> sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(std::size_t(num_structural_), Scalar{0});
    for (int i = 0; i < rows_; ++i)
      if (basis_[std::size_t(i)] < num_structural_)
        sol.x[std::size_t(basis_[std::size_t(i)])] = tableau_(i, cols_ - 1);
    Scalar value{0};
    for (int j = 0; j < num_structural_; ++j) {
      sol.x[std::size_t(j)] += shift_[std::size_t(j)];
      value += costs_[std::size_t(j)] * sol.x[std::size_t(j)];
    }
    sol.value = value;
    return sol;
  }

  Mat tableau_;
  Eigen::Matrix<Scalar, 1, Eigen::Dynamic> objective_row_;
  std::vector<int> basis_;
  std::vector<Scalar> costs_;
  std::vector<Scalar> shift_;
  int rows_ = 0, cols_ = 0;
  int num_structural_ = 0;
  int num_artificial_ = 0;
  int first_artificial_ = 0;
  bool maximize_ = true;
  bool phase1_ = true;
  std::int64_t max_pivots_;
};

/// Exact solve over rationals (Bland, dense).
inline ExactLpSolution solve_lp_exact(const ExactLinearProgram& lp) {
  return DenseSimplex<Rational>(lp).solve();
}

/// Double-precision solve; routed through the revised simplex.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace ctxkit
