#pragma once

#include "symspace/realization.hpp"

namespace symspace {

/// Raised on singular / badly conditioned Iwasawa input.
struct IwasawaError : std::runtime_error {
  double condition_estimate;
  explicit IwasawaError(const std::string& what, double cond = 0.0)
      : std::runtime_error(what), condition_estimate(cond) {}
};

struct IwasawaFactors {
  Cmat n_part, a_part, k_part;
  Rvec log_a;  // coordinates of log(a_part) in basis_a
};

/// g = n a k with n unipotent (upper triangular in the frame), a positive
/// diagonal in the frame, k unitary. Computed by factoring g g* = n a^2 n*
/// with a unit-triangular elimination in the frame.
IwasawaFactors iwasawa_nak(const SymmetricSpaceRealization& real, const Cmat& g);

/// Coordinates in basis_a of log(a_part) for a_part in A.
Rvec log_a(const SymmetricSpaceRealization& real, const Cmat& a_part);

/// Moment map: the a^{-tau} coordinates of log mu(g) (projection along a^{tau}).
Rvec phi(const SymmetricSpaceRealization& real, const Cmat& g);

}  // namespace symspace
