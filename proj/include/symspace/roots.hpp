#pragma once

#include "symspace/realization.hpp"

#include <optional>

namespace symspace {

struct RootDatumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RestrictedRoot {
  Rvec beta;     // covector: values on the ordered a^{-tau} basis
  int mult_plus = 0;   // complex dimension of (g^beta)_+
  int mult_minus = 0;  // complex dimension of (g^beta)_-
  Rvec h_beta;   // coordinates in the a^{-tau} basis
  bool is_positive = false;
  std::vector<Cmat> space_plus, space_minus;  // theta-tau eigenspace bases of g^beta
};

struct WeylElement {
  Rmat action;  // map on a^{-tau} coordinates
  std::optional<Cmat> representative;  // k in K cap H with Ad(k)|_{a^{-tau}} = action
  double rep_error = 0.0;
};

struct RestrictedRootDatum {
  std::vector<RestrictedRoot> roots;        // closed under negation
  std::vector<int> positive;                // indices into roots
  std::vector<int> delta_minus_plus;        // positive indices with mult_minus > 0
  std::vector<WeylElement> weyl;            // full group; element 0 is the identity
  Rmat killing_gram;                        // kappa on the a^{-tau} basis

  double root_value(int root_index, const Rvec& z) const {
    return roots[root_index].beta.dot(z);
  }
};

RestrictedRootDatum compute_root_datum(const SymmetricSpaceRealization& real);

/// The unique H in a^{-tau} with beta(H) = 1 and kappa(H, ker beta) = 0,
/// as coordinates in the a^{-tau} basis.
Rvec compute_h_beta(const SymmetricSpaceRealization& real, const Rvec& beta);

/// Generators {-H_beta : beta positive with mult_minus > 0} of the conal part.
std::vector<Rvec> cone_generators(const RestrictedRootDatum& datum);

}  // namespace symspace
