#include "symspace/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symspace {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;

struct Tableau {
  Rmat t;                 // m x (n_total) working matrix B^{-1}[A | I]
  Rvec rhs;               // B^{-1} b
  std::vector<int> basis; // basic variable per row
  int n_struct;           // structural columns (artificials follow)
};

// One simplex phase on the tableau. Costs are given for every column.
// Columns with allow[j] == false may never enter the basis.
LpStatus run_simplex(Tableau& tab, const Rvec& cost, const std::vector<bool>& allow,
                     int max_iter, int* iter_count) {
  const int m = static_cast<int>(tab.t.rows());
  const int n = static_cast<int>(tab.t.cols());
  for (int it = 0; it < max_iter; ++it) {
    // reduced costs: c_j - c_B' T_j ; Bland: pick the smallest eligible index
    Rvec cb(m);
    for (int i = 0; i < m; ++i) cb[i] = cost[tab.basis[i]];
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (!allow[j]) continue;
      double red = cost[j] - cb.dot(tab.t.col(j));
      if (red < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      *iter_count += it;
      return LpStatus::Optimal;
    }
    // ratio test, Bland tie-break on the basic variable index
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = tab.t(i, enter);
      if (a > kPivotTol) {
        double ratio = tab.rhs[i] / a;
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      *iter_count += it;
      return LpStatus::Unbounded;
    }
    // pivot
    double piv = tab.t(leave, enter);
    tab.t.row(leave) /= piv;
    tab.rhs[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      double f = tab.t(i, enter);
      if (f != 0.0) {
        tab.t.row(i) -= f * tab.t.row(leave);
        tab.rhs[i] -= f * tab.rhs[leave];
      }
    }
    tab.basis[leave] = enter;
  }
  return LpStatus::IterationLimit;
}

}  // namespace

LpResult solve_lp(const Rmat& A, const Rvec& b, const Rvec& c, int max_iter) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw std::invalid_argument("solve_lp: shape mismatch");

  LpResult res;
  if (m == 0) {  // no constraints: optimum at x = 0 (c >= 0 assumed by callers)
    res.status = LpStatus::Optimal;
    res.x = Rvec::Zero(n);
    return res;
  }

  // phase 1 setup: flip rows to b >= 0, artificial basis
  Tableau tab;
  tab.n_struct = n;
  tab.t.resize(m, n + m);
  tab.rhs.resize(m);
  Rvec flip(m);
  for (int i = 0; i < m; ++i) {
    flip[i] = (b[i] < 0.0) ? -1.0 : 1.0;
    tab.t.row(i).head(n) = flip[i] * A.row(i);
    tab.rhs[i] = flip[i] * b[i];
  }
  tab.t.rightCols(m) = Rmat::Identity(m, m);
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) tab.basis[i] = n + i;

  Rvec cost1 = Rvec::Zero(n + m);
  cost1.tail(m).setOnes();
  std::vector<bool> allow(n + m, true);

  LpStatus st = run_simplex(tab, cost1, allow, max_iter, &res.iterations);
  if (st != LpStatus::Optimal) {
    res.status = st;
    return res;
  }
  double phase1 = 0.0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= n) phase1 += tab.rhs[i];
  res.infeasibility = phase1;

  if (phase1 > 1e-8) {
    // Farkas certificate y = c_B' B^{-1} (artificial columns carry B^{-1}),
    // un-flipped back to the original row signs.
    res.status = LpStatus::Infeasible;
    res.farkas.resize(m);
    for (int i = 0; i < m; ++i) {
      double yi = 0.0;
      for (int r = 0; r < m; ++r)
        if (tab.basis[r] >= n) yi += tab.t(r, n + i);
      res.farkas[i] = yi * flip[i];
    }
    return res;
  }

  // drive remaining artificials out of the basis where possible
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    int piv = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > kPivotTol) {
        piv = j;
        break;
      }
    }
    if (piv < 0) continue;  // redundant row, artificial stays basic at level 0
    double pv = tab.t(i, piv);
    tab.t.row(i) /= pv;
    tab.rhs[i] /= pv;
    for (int r = 0; r < m; ++r) {
      if (r == i) continue;
      double f = tab.t(r, piv);
      if (f != 0.0) {
        tab.t.row(r) -= f * tab.t.row(i);
        tab.rhs[r] -= f * tab.rhs[i];
      }
    }
    tab.basis[i] = piv;
  }

  // phase 2
  Rvec cost2 = Rvec::Zero(n + m);
  cost2.head(n) = c;
  for (int j = n; j < n + m; ++j) allow[j] = false;
  st = run_simplex(tab, cost2, allow, max_iter, &res.iterations);
  if (st != LpStatus::Optimal) {
    res.status = st;
    return res;
  }

  res.status = LpStatus::Optimal;
  res.x = Rvec::Zero(n);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.rhs[i];
  res.objective = c.dot(res.x);
  return res;
}

LpResult solve_feasibility(const Rmat& A, const Rvec& b, int max_iter) {
  return solve_lp(A, b, Rvec::Zero(A.cols()), max_iter);
}

}  // namespace symspace
