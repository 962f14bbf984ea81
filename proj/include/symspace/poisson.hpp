#pragma once

#include "symspace/realization.hpp"
#include "symspace/roots.hpp"
#include "symspace/sampling.hpp"

namespace symspace {

struct ManinReport {
  double max_h_isotropy = 0.0;     // max |Im kappa| on h x h
  double max_dual_isotropy = 0.0;  // max |Im kappa| on (c^{-tau}+n) x itself
  double cross_sigma_min = 0.0;    // smallest singular value of the cross Gram
  int dim_h = 0, dim_dual = 0, dim_g = 0;
};

ManinReport check_manin_triple(const SymmetricSpaceRealization& real);

/// A point h a . K of the orbit, with the cotangent space identified
/// with Ad(h a) k.
struct OrbitPoint {
  Cmat h, h_inv;
  Cmat a, a_inv;
  Rvec x_coords;  // a = exp of this a^{-tau} vector
  std::vector<Cmat> cotangent_basis;
};

OrbitPoint make_orbit_point(const SymmetricSpaceRealization& real, const Cmat& h,
                            const Cmat& h_inv, const Rvec& x_coords);

/// The anchor map of the leaf distribution: projection of the covector onto h
/// along c^{-tau} + n, as a tangent representative in g.
Cmat pi_sharp(const SymmetricSpaceRealization& real, const OrbitPoint& pt, const Cmat& covector);

/// Codimension of the symplectic leaf through the point inside the H-orbit;
/// the orbit is regular with codimension dim a^{tau}.
int leaf_codimension(const SymmetricSpaceRealization& real, const OrbitPoint& pt);

struct MomentIdentityResidual {
  double hamiltonian = 0.0;   // |pr_h(Ad(b) Z) - Z|
  double n_membership = 0.0;  // distance of Ad(b) Z - Z from n
};

/// Z in i a^{-tau}; b = n a from the Iwasawa factors of h a.
MomentIdentityResidual moment_identity_residual(const SymmetricSpaceRealization& real,
                                                const Cmat& h, const Cmat& a, const Cmat& z);

struct FixedPointReport {
  bool skipped = false;        // representative unavailable
  double vertex_error = 0.0;   // |phi(w(a)) - w(X)|
  double t_fixed_residual = 0.0;  // max |b(t k_w a) - b(k_w a)| over sampled t
};

FixedPointReport fixed_point_check(const SymmetricSpaceRealization& real,
                                   const RestrictedRootDatum& datum, int weyl_index,
                                   const Rvec& x_coords, Rng& rng, int t_samples = 8);

}  // namespace symspace
