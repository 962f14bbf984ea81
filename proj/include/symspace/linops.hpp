#pragma once

#include "symspace/types.hpp"

#include <stdexcept>

namespace symspace {

/// Rank with singular values below rel_tol * sigma_max counted as zero.
int numeric_rank(const Rmat& m, double rel_tol = 1e-9);

/// Raised when the kept/discarded singular values are separated by less than
/// two orders of magnitude, so the rank decision is not trustworthy.
struct RankAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// numeric_rank that enforces the spectral-gap rule (throws RankAmbiguity).
int checked_rank(const Rmat& m, double rel_tol = 1e-9, double min_gap = 100.0);

double smallest_singular_value(const Rmat& m);

/// Least-squares coordinates of x in the column span; optional residual norm.
Rvec coordinates_in(const Rmat& columns, const Rvec& x, double* residual = nullptr);

/// Greedy deterministic span reduction: keeps the columns (in order) that
/// enlarge the span, until the target dimension is reached.
std::vector<Cmat> independent_subset(const std::vector<Cmat>& candidates, double tol = 1e-9);

}  // namespace symspace
