#include "sul/simplex.hpp"

#include <string>

namespace sul {

namespace {

/// Condensed (Tucker) tableau: row i holds basic variable
/// r_i = b_i - sum_j a_ij x_j over the nonbasic x_j; the last row holds the
/// reduced costs and -z.
class Tableau {
 public:
  Tableau(const LinearProgram& lp) : rows_(static_cast<int>(lp.rows.size())), cols_(lp.num_vars) {
    cells_.reserve(static_cast<std::size_t>((rows_ + 1) * (cols_ + 1)));
    for (int i = 0; i < rows_; ++i) {
      const auto& row = lp.rows[static_cast<std::size_t>(i)];
      for (int j = 0; j < cols_; ++j) cells_.push_back(row[static_cast<std::size_t>(j)]);
      cells_.push_back(lp.rhs[static_cast<std::size_t>(i)]);
    }
    for (int j = 0; j < cols_; ++j) cells_.push_back(lp.objective[static_cast<std::size_t>(j)]);
    cells_.emplace_back(0);
    for (int j = 0; j < cols_; ++j) col_label_.push_back(j);
    for (int i = 0; i < rows_; ++i) row_label_.push_back(cols_ + i);
  }

  Scalar& at(int i, int j) { return cells_[static_cast<std::size_t>(i * (cols_ + 1) + j)]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int row_label(int i) const { return row_label_[static_cast<std::size_t>(i)]; }
  int col_label(int j) const { return col_label_[static_cast<std::size_t>(j)]; }

  void pivot(int p, int q) {
    Scalar inv(1);
    inv /= at(p, q);
    for (int j = 0; j <= cols_; ++j) {
      if (j != q) mpfr_mul(at(p, j).get(), at(p, j).get(), inv.get(), MPFR_RNDN);
    }
    Scalar tmp;
    for (int i = 0; i <= rows_; ++i) {
      if (i == p) continue;
      Scalar& f = at(i, q);
      if (f.is_zero()) continue;
      for (int j = 0; j <= cols_; ++j) {
        if (j == q) continue;
        mpfr_mul(tmp.get(), f.get(), at(p, j).get(), MPFR_RNDN);
        mpfr_sub(at(i, j).get(), at(i, j).get(), tmp.get(), MPFR_RNDN);
      }
      mpfr_mul(f.get(), f.get(), inv.get(), MPFR_RNDN);
      mpfr_neg(f.get(), f.get(), MPFR_RNDN);
    }
    at(p, q) = std::move(inv);
    std::swap(row_label_[static_cast<std::size_t>(p)], col_label_[static_cast<std::size_t>(q)]);
  }

 private:
  int rows_;
  int cols_;
  std::vector<Scalar> cells_;
  std::vector<int> row_label_;
  std::vector<int> col_label_;
};

}  // namespace

namespace {

// Leaving row for the dual method: a negative right-hand side, most negative
// first (smallest label under Bland).
int dual_leaving_row(Tableau& t, const Scalar& tol, bool bland) {
  const int n = t.cols();
  const Scalar neg_tol = -tol;
  int p = -1;
  for (int i = 0; i < t.rows(); ++i) {
    if (!(t.at(i, n) < neg_tol)) continue;
    if (p < 0 || (bland ? t.row_label(i) < t.row_label(p) : t.at(i, n) < t.at(p, n))) p = i;
  }
  return p;
}

// Entering column for the dual method: min c_j / a_pj over a_pj < 0, which
// keeps every reduced cost nonpositive.
int dual_entering_column(Tableau& t, int p, const Scalar& tol, Scalar& ratio, Scalar& best) {
  const int m = t.rows();
  const Scalar neg_tol = -tol;
  int q = -1;
  for (int j = 0; j < t.cols(); ++j) {
    const Scalar& a = t.at(p, j);
    if (!(a < neg_tol)) continue;
    const Scalar& c = t.at(m, j);
    if (c.sign() >= 0) {
      ratio = Scalar(0);
    } else {
      mpfr_div(ratio.get(), c.get(), a.get(), MPFR_RNDN);
    }
    if (q < 0) {
      q = j;
      best = ratio;
      continue;
    }
    const int cmp = compare(ratio, best);
    if (cmp < 0 || (cmp == 0 && t.col_label(j) < t.col_label(q))) {
      q = j;
      best = ratio;
    }
  }
  return q;
}

int primal_entering_column(Tableau& t, const Scalar& tol, bool bland) {
  const int m = t.rows();
  int q = -1;
  for (int j = 0; j < t.cols(); ++j) {
    if (!(t.at(m, j) > tol)) continue;
    if (q < 0 || (bland ? t.col_label(j) < t.col_label(q) : t.at(m, j) > t.at(m, q))) q = j;
  }
  return q;
}

int primal_leaving_row(Tableau& t, int q, const Scalar& tol, Scalar& ratio, Scalar& best) {
  const int n = t.cols();
  int p = -1;
  for (int i = 0; i < t.rows(); ++i) {
    const Scalar& a = t.at(i, q);
    if (!(a > tol)) continue;
    const Scalar& b = t.at(i, n);
    if (b.sign() <= 0) {
      ratio = Scalar(0);
    } else {
      mpfr_div(ratio.get(), b.get(), a.get(), MPFR_RNDN);
    }
    if (p < 0) {
      p = i;
      best = ratio;
      continue;
    }
    const int cmp = compare(ratio, best);
    if (cmp < 0 || (cmp == 0 && t.row_label(i) < t.row_label(p))) {
      p = i;
      best = ratio;
    }
  }
  return p;
}

}  // namespace

LpSolution maximize(const LinearProgram& lp, const Scalar& tol, int max_pivots) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = lp.num_vars;
  if (static_cast<int>(lp.rhs.size()) != m || static_cast<int>(lp.objective.size()) != n) {
    throw LpNumericalFailure("linear program dimensions are inconsistent");
  }
  bool primal_feasible = true;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(lp.rows[static_cast<std::size_t>(i)].size()) != n) {
      throw LpNumericalFailure("constraint row " + std::to_string(i) + " has the wrong length");
    }
    if (lp.rhs[static_cast<std::size_t>(i)].sign() < 0) primal_feasible = false;
  }
  if (!primal_feasible) {
    for (const Scalar& c : lp.objective) {
      if (c.sign() > 0) throw LpNumericalFailure("start is neither primal nor dual feasible");
    }
  }
  if (max_pivots <= 0) max_pivots = 50 * (m + n) + 1000;

  Tableau t(lp);
  LpSolution out;
  Scalar ratio, best;
  // Dantzig pricing; Bland's rule takes over during a run of degenerate
  // pivots so neither method can cycle.
  constexpr int kDegenerateLimit = 8;
  int degenerate_run = 0;
  auto step = [&](int p, int q) {
    if (++out.pivots > max_pivots) {
      throw LpNumericalFailure("simplex exceeded " + std::to_string(max_pivots) + " pivots");
    }
    degenerate_run = best.sign() > 0 ? 0 : degenerate_run + 1;
    t.pivot(p, q);
  };

  if (!primal_feasible) {
    while (true) {
      const int p = dual_leaving_row(t, tol, degenerate_run >= kDegenerateLimit);
      if (p < 0) break;
      const int q = dual_entering_column(t, p, tol, ratio, best);
      if (q < 0) {
        out.status = LpStatus::kInfeasible;
        return out;
      }
      step(p, q);
    }
    degenerate_run = 0;
  }

  while (true) {
    const int q = primal_entering_column(t, tol, degenerate_run >= kDegenerateLimit);
    if (q < 0) break;
    const int p = primal_leaving_row(t, q, tol, ratio, best);
    if (p < 0) {
      out.status = LpStatus::kUnbounded;
      return out;
    }
    step(p, q);
  }

  out.status = LpStatus::kOptimal;
  out.x.assign(static_cast<std::size_t>(n), Scalar(0));
  for (int i = 0; i < m; ++i) {
    const int label = t.row_label(i);
    if (label < n) {
      Scalar v = t.at(i, n);
      if (v.sign() < 0) v = Scalar(0);
      out.x[static_cast<std::size_t>(label)] = std::move(v);
    }
  }
  out.objective = -t.at(m, n);
  return out;
}

}  // namespace sul
