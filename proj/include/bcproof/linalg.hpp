// Exact dense linear algebra over any ordered field scalar.
//
// Pivoting picks the first nonzero entry: with exact scalars there is no
// round-off to control, and a fixed rule keeps every result deterministic.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bcproof/rational.hpp"

namespace bcproof::linalg {

template <typename Scalar>
struct RowEchelon {
  MatrixX<Scalar> reduced;
  std::vector<Eigen::Index> pivot_columns;
};

/// Reduced row echelon form of `m` (each pivot is 1, zero above and below).
template <typename Scalar>
RowEchelon<Scalar> reduced_row_echelon(MatrixX<Scalar> m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = row; i < m.rows(); ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    m.row(row) *= inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Scalar factor = m(i, col);
      m.row(i) -= factor * m.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename Scalar>
Eigen::Index rank(const MatrixX<Scalar>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon<Scalar>(m).pivot_columns.size());
}

/// Basis of {x : m x = 0}, one basis vector per column of the result.
template <typename Scalar>
MatrixX<Scalar> nullspace(const MatrixX<Scalar>& m) {
  const auto rref = reduced_row_echelon<Scalar>(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto c : rref.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Eigen::Index> free_columns;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_columns.push_back(c);
  }
  MatrixX<Scalar> basis(m.cols(), static_cast<Eigen::Index>(free_columns.size()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    basis.col(k).setConstant(Scalar(0));
    const Eigen::Index free_col = free_columns[static_cast<std::size_t>(k)];
    basis(free_col, k) = 1;
    for (std::size_t r = 0; r < rref.pivot_columns.size(); ++r) {
      basis(rref.pivot_columns[r], k) = -rref.reduced(static_cast<Eigen::Index>(r), free_col);
    }
  }
  return basis;
}

/// Solution of a square system, or nullopt when `a` is singular.
template <typename Scalar>
std::optional<VectorX<Scalar>> solve_unique(const MatrixX<Scalar>& a, const VectorX<Scalar>& b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) return std::nullopt;
  MatrixX<Scalar> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto rref = reduced_row_echelon<Scalar>(std::move(aug));
  if (static_cast<Eigen::Index>(rref.pivot_columns.size()) != a.cols()) return std::nullopt;
  if (rref.pivot_columns.back() >= a.cols()) return std::nullopt;
  return VectorX<Scalar>(rref.reduced.col(a.cols()).head(a.cols()));
}

/// Outcome of minimizing `cost . y` subject to `M y = r`, `y >= 0`.
template <typename Scalar>
struct StandardFormResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  VectorX<Scalar> solution;  // optimal y
  Scalar value{};
  std::vector<Eigen::Index> basis;  // basic columns of M at optimality
  VectorX<Scalar> ray;              // y >= 0, M y = 0, cost . y < 0 when unbounded
};

namespace detail {

/// Dense tableau with Bland's rule. Rows [0, rows) are constraints, the last
/// row holds reduced costs and the negated objective value.
template <typename Scalar>
class Tableau {
 public:
  Tableau(const MatrixX<Scalar>& m, const VectorX<Scalar>& r)
      : columns_(m.cols()), table_(m.rows() + 1, m.cols() + m.rows() + 1) {
    table_.setConstant(Scalar(0));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const bool flip = r[i] < 0;
      for (Eigen::Index j = 0; j < m.cols(); ++j) table_(i, j) = flip ? Scalar(-m(i, j)) : m(i, j);
      table_(i, columns_ + i) = 1;
      table_(i, rhs_col()) = flip ? Scalar(-r[i]) : r[i];
      basis_.push_back(columns_ + i);
    }
  }

  Eigen::Index rows() const { return static_cast<Eigen::Index>(basis_.size()); }
  Eigen::Index rhs_col() const { return table_.cols() - 1; }
  Eigen::Index obj_row() const { return rows(); }

  void set_phase_one_costs() {
    table_.row(obj_row()).setConstant(Scalar(0));
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (basis_[static_cast<std::size_t>(i)] < columns_) continue;
      for (Eigen::Index j = 0; j < columns_; ++j) table_(obj_row(), j) -= table_(i, j);
      table_(obj_row(), rhs_col()) -= table_(i, rhs_col());
    }
  }

  void set_costs(const VectorX<Scalar>& cost) {
    table_.row(obj_row()).setConstant(Scalar(0));
    for (Eigen::Index j = 0; j < columns_; ++j) table_(obj_row(), j) = cost[j];
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b >= columns_ || cost[b] == 0) continue;
      const Scalar cb = cost[b];
      for (Eigen::Index j = 0; j < columns_; ++j) table_(obj_row(), j) -= cb * table_(i, j);
      table_(obj_row(), rhs_col()) -= cb * table_(i, rhs_col());
    }
  }

  // Runs Bland's rule over columns [0, allowed). Returns the entering column
  // of an unbounded direction, or -1 at optimality.
  Eigen::Index iterate(Eigen::Index allowed) {
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (table_(obj_row(), j) < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return -1;
      Eigen::Index leaving = -1;
      Scalar best_ratio{};
      for (Eigen::Index i = 0; i < rows(); ++i) {
        if (table_(i, entering) <= 0) continue;
        Scalar ratio = table_(i, rhs_col()) / table_(i, entering);
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving < 0) return entering;
      pivot(leaving, entering);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    const Scalar inv = Scalar(1) / table_(row, col);
    table_.row(row) *= inv;
    for (Eigen::Index i = 0; i < table_.rows(); ++i) {
      if (i == row || table_(i, col) == 0) continue;
      const Scalar factor = table_(i, col);
      table_.row(i) -= factor * table_.row(row);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Pivots basic artificials out at zero level; rows that cannot be cleared
  // are linearly dependent and get dropped.
  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows();) {
      if (basis_[static_cast<std::size_t>(i)] < columns_) {
        ++i;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < columns_; ++j) {
        if (table_(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  Scalar objective_value() const { return -table_(obj_row(), rhs_col()); }

  VectorX<Scalar> basic_solution() const {
    VectorX<Scalar> y(columns_);
    y.setConstant(Scalar(0));
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b < columns_) y[b] = table_(i, rhs_col());
    }
    return y;
  }

  VectorX<Scalar> ray(Eigen::Index entering) const {
    VectorX<Scalar> y(columns_);
    y.setConstant(Scalar(0));
    y[entering] = 1;
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Eigen::Index b = basis_[static_cast<std::size_t>(i)];
      if (b < columns_) y[b] = -table_(i, entering);
    }
    return y;
  }

  const std::vector<Eigen::Index>& basis() const { return basis_; }

 private:
  void remove_row(Eigen::Index i) {
    MatrixX<Scalar> next(table_.rows() - 1, table_.cols());
    next.topRows(i) = table_.topRows(i);
    next.bottomRows(table_.rows() - 1 - i) = table_.bottomRows(table_.rows() - 1 - i);
    table_ = std::move(next);
    basis_.erase(basis_.begin() + i);
  }

  Eigen::Index columns_;
  MatrixX<Scalar> table_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace detail

/// Two-phase primal simplex with Bland's rule; terminates on every input.
template <typename Scalar>
StandardFormResult<Scalar> minimize_standard_form(const MatrixX<Scalar>& m, const VectorX<Scalar>& r,
                                                  const VectorX<Scalar>& cost) {
  using Status = typename StandardFormResult<Scalar>::Status;
  StandardFormResult<Scalar> result;
  detail::Tableau<Scalar> tableau(m, r);
  tableau.set_phase_one_costs();
  tableau.iterate(m.cols());
  if (tableau.objective_value() != 0) {
    result.status = Status::Infeasible;
    return result;
  }
  tableau.drive_out_artificials();
  tableau.set_costs(cost);
  const Eigen::Index unbounded_col = tableau.iterate(m.cols());
  if (unbounded_col >= 0) {
    result.status = Status::Unbounded;
    result.ray = tableau.ray(unbounded_col);
    return result;
  }
  result.status = Status::Optimal;
  result.solution = tableau.basic_solution();
  result.value = tableau.objective_value();
  result.basis = tableau.basis();
  return result;
}

}  // namespace bcproof::linalg
