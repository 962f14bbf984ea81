#pragma once

#include "symspace/realization.hpp"

#include <cstdint>

namespace symspace {

/// Deterministic, platform-independent generator (splitmix64 stream with a
/// Box-Muller normal transform). Each (seed, index) pair opens an
/// independent substream, so sample i never depends on evaluation order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();
  double uniform();             // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();            // standard normal

  static Rng substream(uint64_t seed, uint64_t index);

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random element of H: exp(Y1) exp(Y2) with Y1, Y2 Gaussian in basis_h
/// coordinates, standard deviation = scale. Returns the inverse alongside.
struct GroupSample {
  Cmat g, g_inv;
};
GroupSample sample_h(const SymmetricSpaceRealization& real, Rng& rng, double scale);

}  // namespace symspace
