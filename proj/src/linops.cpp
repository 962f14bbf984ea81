#include "symspace/linops.hpp"

namespace symspace {

int numeric_rank(const Rmat& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Rmat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++r;
  return r;
}

int checked_rank(const Rmat& m, double rel_tol, double min_gap) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Rmat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++r;
  if (r > 0 && r < sv.size() && sv[r] > 0.0 && sv[r - 1] / sv[r] < min_gap)
    throw RankAmbiguity("rank decision lacks a clear spectral gap");
  return r;
}

double smallest_singular_value(const Rmat& m) {
  Eigen::JacobiSVD<Rmat> svd(m);
  const auto& sv = svd.singularValues();
  return sv.size() ? sv[sv.size() - 1] : 0.0;
}

Rvec coordinates_in(const Rmat& columns, const Rvec& x, double* residual) {
  Rvec c = columns.colPivHouseholderQr().solve(x);
  if (residual) *residual = (columns * c - x).norm();
  return c;
}

std::vector<Cmat> independent_subset(const std::vector<Cmat>& candidates, double tol) {
  std::vector<Cmat> kept;
  if (candidates.empty()) return kept;
  const int rows = static_cast<int>(2 * candidates[0].rows() * candidates[0].cols());
  Rmat span(rows, 0);
  for (const auto& c : candidates) {
    Rvec v = embed_real(c);
    if (v.norm() < tol) continue;
    Rmat trial(rows, span.cols() + 1);
    if (span.cols() > 0) trial.leftCols(span.cols()) = span;
    trial.col(span.cols()) = v;
    if (numeric_rank(trial, tol) == trial.cols()) {
      span = trial;
      kept.push_back(c);
    }
  }
  return kept;
}

}  // namespace symspace
