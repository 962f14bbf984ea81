#pragma once

#include "symspace/types.hpp"

namespace symspace {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Rvec x;              // primal solution when Optimal
  double objective = 0.0;
  Rvec farkas;         // when Infeasible: y with y'A <= 0 and y'b > 0
  double infeasibility = 0.0;  // phase-1 optimum = minimal l1 equation violation
  int iterations = 0;
};

/// min c'x  s.t.  A x = b, x >= 0.
/// Dense two-phase tableau simplex, Bland's pivoting rule (deterministic,
/// cycle-free). Intended for small problems (tens of rows/columns).
LpResult solve_lp(const Rmat& A, const Rvec& b, const Rvec& c, int max_iter = 20000);

/// Feasibility of A x = b, x >= 0 (phase 1 only).
LpResult solve_feasibility(const Rmat& A, const Rvec& b, int max_iter = 20000);

}  // namespace symspace
