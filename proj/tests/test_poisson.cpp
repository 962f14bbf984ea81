#include "symspace/poisson.hpp"

#include "symspace/convex.hpp"
#include "symspace/iwasawa.hpp"

#include <doctest.h>

using namespace symspace;

namespace {

SymmetricSpaceRealization make(Preset preset, int n) {
  return preset == Preset::SUpq ? build_realization(preset, n, n - 1, 1)
                                : build_realization(preset, n);
}

Rvec random_x(const SymmetricSpaceRealization& r, Rng& rng) {
  Rvec x(r.rank_a_minus_tau());
  for (int k = 0; k < x.size(); ++k) x[k] = rng.uniform(-1.0, 1.0);
  return x;
}

}  // namespace

TEST_CASE("manin triple residuals") {
  for (auto preset : {Preset::Compact, Preset::Split, Preset::SUpq}) {
    auto r = make(preset, 3);
    auto rep = check_manin_triple(r);
    CHECK(rep.max_h_isotropy < 1e-12);
    CHECK(rep.max_dual_isotropy < 1e-12);
    CHECK(rep.cross_sigma_min > 1e-6);
    CHECK(rep.dim_h + rep.dim_dual == rep.dim_g);
  }
}

TEST_CASE("orbit points require tau-fixed group elements") {
  auto r = build_realization(Preset::Split, 2);
  Rvec x = Rvec::Constant(1, 0.3);
  Cmat not_in_h = Cmat::Identity(2, 2);
  not_in_h(0, 1) = Complex(0.0, 0.5);  // imaginary entry: not real, so not in SL(2,R)
  not_in_h(0, 0) = 1.0;
  CHECK_THROWS_AS(make_orbit_point(r, not_in_h, not_in_h.inverse(), x), std::invalid_argument);
}

TEST_CASE("pi_sharp kernel, antisymmetry, and rank") {
  Rng rng(31);
  auto r = build_realization(Preset::Compact, 3);
  GroupSample hs = sample_h(r, rng, 0.6);
  OrbitPoint pt = make_orbit_point(r, hs.g, hs.g_inv, random_x(r, rng));

  // kernel: covectors inside c^{-tau} + n map to zero
  for (const auto& b : r.basis_n) CHECK(frob(pi_sharp(r, pt, b)) < 1e-10);

  // antisymmetry of <pr_h V, W> on the cotangent space
  for (int i = 0; i < 5; ++i) {
    const Cmat& v = pt.cotangent_basis[i];
    for (int j = 0; j < 5; ++j) {
      const Cmat& w = pt.cotangent_basis[j];
      double lhs = r.pairing(pi_sharp(r, pt, v), w);
      double rhs = -r.pairing(pi_sharp(r, pt, w), v);
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("leaf codimension equals dim a^tau and is constant") {
  struct Case {
    Preset preset;
    int n;
    int expected;
  };
  for (auto c : {Case{Preset::Compact, 3, 0}, Case{Preset::SUpq, 3, 0},
                 Case{Preset::Split, 2, 0}, Case{Preset::Split, 3, 1}}) {
    auto r = make(c.preset, c.n);
    REQUIRE(static_cast<int>(r.basis_a_tau.size()) == c.expected);
    Rng rng(41);
    Rvec x = random_x(r, rng);
    for (int i = 0; i < 20; ++i) {
      GroupSample hs = sample_h(r, rng, 0.7);
      OrbitPoint pt = make_orbit_point(r, hs.g, hs.g_inv, x);
      CHECK(leaf_codimension(r, pt) == c.expected);
    }
  }
}

TEST_CASE("moment map identity residuals") {
  Rng rng(43);
  const Complex im(0, 1);
  for (auto preset : {Preset::Compact, Preset::Split, Preset::SUpq}) {
    auto r = make(preset, 3);

    // h = identity: Ad(b) Z = Z exactly since b = a commutes with i a^{-tau}
    Cmat a0 = expm(r.a_minus_tau_matrix(random_x(r, rng)));
    Cmat z0 = im * r.a_minus_tau_matrix(random_x(r, rng));
    auto identity_case =
        moment_identity_residual(r, Cmat::Identity(3, 3), a0, z0);
    CHECK(identity_case.hamiltonian < 1e-13);
    CHECK(identity_case.n_membership < 1e-13);

    double worst_h = 0.0, worst_n = 0.0;
    for (int i = 0; i < 100; ++i) {
      GroupSample hs = sample_h(r, rng, 0.7);
      Cmat a = expm(r.a_minus_tau_matrix(random_x(r, rng)));
      Cmat z = im * r.a_minus_tau_matrix(random_x(r, rng));
      auto res = moment_identity_residual(r, hs.g, a, z);
      worst_h = std::max(worst_h, res.hamiltonian);
      worst_n = std::max(worst_n, res.n_membership);

      // linearity in Z: residual(2Z) <= 2 residual(Z) + tol
      auto res2 = moment_identity_residual(r, hs.g, a, 2.0 * z);
      CHECK(res2.hamiltonian <= 2.0 * res.hamiltonian + 1e-10);
    }
    CHECK(worst_h < 1e-8);
    CHECK(worst_n < 1e-8);
  }
}

TEST_CASE("fixed points land on the Weyl vertices and are T-fixed") {
  auto r = build_realization(Preset::Compact, 3);
  auto d = compute_root_datum(r);
  Rvec x(2);
  x << 2.0, 1.0;
  Rng rng(47);
  for (size_t wi = 0; wi < d.weyl.size(); ++wi) {
    auto rep = fixed_point_check(r, d, static_cast<int>(wi), x, rng);
    REQUIRE_FALSE(rep.skipped);
    CHECK(rep.vertex_error < 1e-8);
    CHECK(rep.t_fixed_residual < 1e-8);
  }

  // identity element: phi(a) = X exactly
  auto rep0 = fixed_point_check(r, d, 0, x, rng);
  CHECK(rep0.vertex_error < 1e-12);

  // transposition representative conjugates the diagonal into swapped entries
  auto supq = build_realization(Preset::SUpq, 3, 2, 1);
  auto dsupq = compute_root_datum(supq);
  auto model = build_model(dsupq, x);
  for (size_t wi = 0; wi < dsupq.weyl.size(); ++wi) {
    auto rep = fixed_point_check(supq, dsupq, static_cast<int>(wi), x, rng);
    REQUIRE_FALSE(rep.skipped);
    CHECK(rep.vertex_error < 1e-8);
    Rvec expected = dsupq.weyl[wi].action * x;
    bool matches_vertex = false;
    for (const auto& v : model.vertices)
      if ((v - expected).norm() < 1e-8) matches_vertex = true;
    CHECK(matches_vertex);
  }
}
