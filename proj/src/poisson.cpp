#include "symspace/poisson.hpp"

#include "symspace/iwasawa.hpp"
#include "symspace/linops.hpp"

#include <cmath>

namespace symspace {

ManinReport check_manin_triple(const SymmetricSpaceRealization& real) {
  ManinReport rep;
  rep.dim_h = static_cast<int>(real.basis_h.size());
  std::vector<Cmat> dual = real.basis_c_minus_tau;
  dual.insert(dual.end(), real.basis_n.begin(), real.basis_n.end());
  rep.dim_dual = static_cast<int>(dual.size());
  rep.dim_g = real.dim_g();
  for (const auto& x : real.basis_h)
    for (const auto& y : real.basis_h)
      rep.max_h_isotropy = std::max(rep.max_h_isotropy, std::abs(real.pairing(x, y)));
  for (const auto& x : dual)
    for (const auto& y : dual)
      rep.max_dual_isotropy = std::max(rep.max_dual_isotropy, std::abs(real.pairing(x, y)));
  Rmat gram(rep.dim_h, rep.dim_dual);
  for (int i = 0; i < rep.dim_h; ++i)
    for (int j = 0; j < rep.dim_dual; ++j) gram(i, j) = real.pairing(real.basis_h[i], dual[j]);
  rep.cross_sigma_min = smallest_singular_value(gram);
  return rep;
}

OrbitPoint make_orbit_point(const SymmetricSpaceRealization& real, const Cmat& h,
                            const Cmat& h_inv, const Rvec& x_coords) {
  if (frob(real.tau_group(h) - h) > 1e-6 * (1.0 + frob(h)))
    throw std::invalid_argument("make_orbit_point: h is not tau-fixed (not in H)");
  OrbitPoint pt;
  pt.h = h;
  pt.h_inv = h_inv;
  pt.x_coords = x_coords;
  Cmat x = real.a_minus_tau_matrix(x_coords);
  pt.a = expm(x);
  pt.a_inv = expm(-x);
  Cmat ha = h * pt.a;
  Cmat ha_inv = pt.a_inv * h_inv;
  pt.cotangent_basis.reserve(real.basis_k.size());
  for (const auto& y : real.basis_k) pt.cotangent_basis.push_back(ha * y * ha_inv);
  return pt;
}

Cmat pi_sharp(const SymmetricSpaceRealization& real, const OrbitPoint&, const Cmat& covector) {
  return real.manin_split(covector).h_part;
}

int leaf_codimension(const SymmetricSpaceRealization& real, const OrbitPoint& pt) {
  const int dim_k = static_cast<int>(real.basis_k.size());
  auto normalized = [](std::vector<Cmat> mats) {
    for (auto& m : mats) {
      double nrm = frob(m);
      if (nrm > 0.0) m /= nrm;
    }
    return mats;
  };
  std::vector<Cmat> cotangent = normalized(pt.cotangent_basis);

  // orbit tangent dimension: dim h - dim(h cap Ad(ha) k)
  std::vector<Cmat> joint = real.basis_h;
  joint.insert(joint.end(), cotangent.begin(), cotangent.end());
  int orbit_dim = checked_rank(basis_columns(joint)) - dim_k;

  // leaf tangent dimension: the image of pi_sharp inside g / Ad(ha) k;
  // images are scaled by the covector norm so near-kernel outputs stay small
  std::vector<Cmat> image = cotangent;
  for (const auto& v : pt.cotangent_basis) image.push_back(pi_sharp(real, pt, v) / frob(v));
  int leaf_dim = checked_rank(basis_columns(image)) - dim_k;

  int codim = orbit_dim - leaf_dim;
  if (codim < 0) throw RankAmbiguity("leaf_codimension: negative rank gap");
  return codim;
}

MomentIdentityResidual moment_identity_residual(const SymmetricSpaceRealization& real,
                                                const Cmat& h, const Cmat& a, const Cmat& z) {
  IwasawaFactors f = iwasawa_nak(real, h * a);
  Cmat b = f.n_part * f.a_part;
  Cmat adbz = b * z * b.inverse();
  auto parts = real.manin_split(adbz);
  MomentIdentityResidual res;
  res.hamiltonian = frob(parts.h_part - z);
  Cmat diff = adbz - z;
  auto dparts = real.manin_split(diff);
  res.n_membership = frob(diff - dparts.n_part);
  return res;
}

FixedPointReport fixed_point_check(const SymmetricSpaceRealization& real,
                                   const RestrictedRootDatum& datum, int weyl_index,
                                   const Rvec& x_coords, Rng& rng, int t_samples) {
  FixedPointReport rep;
  const auto& w = datum.weyl[weyl_index];
  if (!w.representative) {
    rep.skipped = true;
    return rep;
  }
  const Cmat& kw = *w.representative;
  Cmat a = expm(real.a_minus_tau_matrix(x_coords));
  Cmat wa = kw * a * kw.inverse();

  Rvec expected = w.action * x_coords;
  rep.vertex_error = (phi(real, wa) - expected).norm();

  // T-fixedness: the NA part of t k_w a must not move for t in exp(i a^{-tau})
  Cmat base = kw * a;
  IwasawaFactors f0 = iwasawa_nak(real, base);
  Cmat b0 = f0.n_part * f0.a_part;
  const Complex im(0.0, 1.0);
  for (int s = 0; s < t_samples; ++s) {
    Cmat zt = Cmat::Zero(real.n(), real.n());
    for (const auto& bvec : real.basis_a_minus_tau)
      zt += (im * rng.uniform(-M_PI, M_PI)) * bvec;
    Cmat t = expm(zt);
    IwasawaFactors ft = iwasawa_nak(real, t * base);
    Cmat bt = ft.n_part * ft.a_part;
    rep.t_fixed_residual = std::max(rep.t_fixed_residual, frob(bt - b0));
  }
  return rep;
}

}  // namespace symspace
