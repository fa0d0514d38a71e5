#pragma once

#include <stdexcept>
#include <vector>

#include "sul/scalar.hpp"

namespace sul {

class LpNumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// maximize objective . x  subject to  rows . x <= rhs,  x >= 0. Either
/// rhs >= 0 (x = 0 is primal feasible) or objective <= 0 (x = 0 is dual
/// feasible and the dual simplex method restores primal feasibility).
struct LinearProgram {
  int num_vars = 0;
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  std::vector<Scalar> objective;
};

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  std::vector<Scalar> x;
  Scalar objective;
  int pivots = 0;
};

/// Dense tableau simplex at the working precision. Pricing is Dantzig's
/// rule, replaced by Bland's smallest-index rule during runs of degenerate
/// pivots so the method cannot cycle. Entries with magnitude <= tol are
/// treated as zero when choosing pivots. Throws LpNumericalFailure on a
/// malformed program or when max_pivots is exceeded (0 picks a generous
/// default).
LpSolution maximize(const LinearProgram& lp, const Scalar& tol, int max_pivots = 0);

}  // namespace sul
