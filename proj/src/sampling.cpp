#include "symspace/sampling.hpp"

#include <cmath>

namespace symspace {

uint64_t Rng::next_u64() {
  // splitmix64
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2);
}

Rng Rng::substream(uint64_t seed, uint64_t index) {
  Rng mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  uint64_t s = mixer.next_u64();
  return Rng(s);
}

GroupSample sample_h(const SymmetricSpaceRealization& real, Rng& rng, double scale) {
  const int n = real.n();
  Cmat y1 = Cmat::Zero(n, n), y2 = Cmat::Zero(n, n);
  for (const auto& b : real.basis_h) y1 += (scale * rng.gaussian()) * b;
  for (const auto& b : real.basis_h) y2 += (scale * rng.gaussian()) * b;
  GroupSample s;
  s.g = expm(y1) * expm(y2);
  s.g_inv = expm(-y2) * expm(-y1);
  return s;
}

}  // namespace symspace
