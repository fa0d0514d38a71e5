#include <algorithm>

#include "sul/rho_optimizer.hpp"
#include "sul/simplex.hpp"

namespace sul {

int min_feasible_degree(ParitySignature s) { return s.value() == 1 ? 2 : 3; }

std::vector<Scalar> chebyshev_grid(const Scalar& T, int n) {
  const int points = std::max(64, 8 * n);
  const Scalar span = Scalar(16) * max(T, Scalar(n) * Scalar(n));
  const Scalar step = pi() / Scalar(points);
  std::vector<Scalar> grid;
  grid.reserve(static_cast<std::size_t>(points) + 1);
  for (int j = 0; j <= points; ++j) {
    Scalar offset = ldexp(span * (Scalar(1) - cos(step * Scalar(j))), -1);
    grid.push_back(T + offset);
  }
  return grid;
}

FeasibilityProblem make_feasibility_problem(const LaguerreParam& param, ParitySignature s, int n,
                                            const Scalar& T) {
  return FeasibilityProblem{param, s, n, T, chebyshev_grid(T, n)};
}

namespace {

struct Column {
  int index;  // position in the admissible list
  int sign;   // +1 for c+, -1 for c-
};

std::optional<Candidate> solve_lp(const FeasibilityProblem& fp, const std::vector<int>& indices,
                                  const std::vector<std::vector<Scalar>>& samples) {
  const int count = static_cast<int>(indices.size());
  const int top = indices.back();
  // The leading coefficient of L_K is (-1)^K / K!.
  const int top_sign = (top % 2 == 0) ? 1 : -1;

  std::vector<Column> columns;
  for (int i = 0; i < count; ++i) {
    if (indices[static_cast<std::size_t>(i)] == top) {
      // One-signed, so c_K = 0 (a lower-degree witness) stays feasible.
      columns.push_back({i, top_sign});
      continue;
    }
    columns.push_back({i, 1});
    columns.push_back({i, -1});
  }
  const int num_c = static_cast<int>(columns.size());
  const int slack = num_c;

  LinearProgram lp;
  lp.num_vars = num_c + 1;
  auto new_row = [&lp] { return std::vector<Scalar>(static_cast<std::size_t>(lp.num_vars), Scalar(0)); };

  // The margin is mu = 1 - w with 0 <= w <= 2, so each sample row reads
  // -w - sum_k a_jk c~_k <= -1. Maximizing -w from x = 0 is dual feasible.
  for (const auto& sample : samples) {
    auto row = new_row();
    for (int v = 0; v < num_c; ++v) {
      const Column& col = columns[static_cast<std::size_t>(v)];
      row[static_cast<std::size_t>(v)] =
          col.sign > 0 ? -sample[static_cast<std::size_t>(col.index)] : sample[static_cast<std::size_t>(col.index)];
    }
    row[static_cast<std::size_t>(slack)] = Scalar(-1);
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(-1);
  }
  // p(0) = sum_k c~_k = 0 as a pair of inequalities.
  for (int direction : {1, -1}) {
    auto row = new_row();
    for (int v = 0; v < num_c; ++v) {
      row[static_cast<std::size_t>(v)] = Scalar(direction * columns[static_cast<std::size_t>(v)].sign);
    }
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(0);
  }
  // Box |c~_k| <= 1 and mu >= -1.
  for (int v = 0; v <= num_c; ++v) {
    auto row = new_row();
    row[static_cast<std::size_t>(v)] = Scalar(1);
    lp.rows.push_back(std::move(row));
    lp.rhs.emplace_back(v == slack ? 2 : 1);
  }
  lp.objective.assign(static_cast<std::size_t>(lp.num_vars), Scalar(0));
  lp.objective[static_cast<std::size_t>(slack)] = Scalar(-1);

  const LpSolution sol = maximize(lp, precision_tolerance(2));
  if (sol.status != LpStatus::kOptimal) throw LpNumericalFailure("feasibility LP has no optimal vertex");
  const Scalar margin = Scalar(1) - sol.x[static_cast<std::size_t>(slack)];
  if (!(margin > precision_tolerance(4))) return std::nullopt;

  std::vector<Scalar> normalized(static_cast<std::size_t>(count), Scalar(0));
  for (int v = 0; v < num_c; ++v) {
    const Column& col = columns[static_cast<std::size_t>(v)];
    if (col.sign > 0) {
      normalized[static_cast<std::size_t>(col.index)] += sol.x[static_cast<std::size_t>(v)];
    } else {
      normalized[static_cast<std::size_t>(col.index)] -= sol.x[static_cast<std::size_t>(v)];
    }
  }
  LaguerreExpansion expansion(fp.param);
  for (int i = 0; i < count; ++i) {
    const int k = indices[static_cast<std::size_t>(i)];
    expansion.set(k, normalized[static_cast<std::size_t>(i)] / laguerre_at_zero(k, fp.param));
  }
  return Candidate{std::move(expansion), margin};
}

}  // namespace

std::optional<Candidate> solve_feasibility(const FeasibilityProblem& fp) {
  if (fp.n < min_feasible_degree(fp.s)) return std::nullopt;
  std::vector<int> indices;
  for (int k = 0; k <= fp.n; ++k) {
    if (fp.s.admits(k)) indices.push_back(k);
  }
  std::vector<Scalar> at_zero;
  for (int k : indices) at_zero.push_back(laguerre_at_zero(k, fp.param));

  // Row j holds L_k(t_j) / L_k(0) scaled by sigma(t_j) = sum_k |L_k(t_j) / L_k(0)|.
  std::vector<std::vector<Scalar>> samples;
  samples.reserve(fp.grid.size());
  for (const Scalar& t : fp.grid) {
    const std::vector<Scalar> values = laguerre_values(fp.n, fp.param, t);
    std::vector<Scalar> row;
    Scalar sigma(0);
    for (std::size_t i = 0; i < indices.size(); ++i) {
      row.push_back(values[static_cast<std::size_t>(indices[i])] / at_zero[i]);
      sigma += abs(row.back());
    }
    for (Scalar& v : row) v /= sigma;
    samples.push_back(std::move(row));
  }

  return solve_lp(fp, indices, samples);
}

}  // namespace sul
