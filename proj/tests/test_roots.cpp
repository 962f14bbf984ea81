#include "symspace/roots.hpp"

#include "symspace/linops.hpp"

#include <doctest.h>

#include <set>

using namespace symspace;

TEST_CASE("compact n=2: one positive root, Kostant multiplicities") {
  auto r = build_realization(Preset::Compact, 2);
  auto d = compute_root_datum(r);
  REQUIRE(d.roots.size() == 2);
  REQUIRE(d.positive.size() == 1);
  const auto& root = d.roots[d.positive[0]];
  CHECK(root.mult_plus == 1);
  CHECK(root.mult_minus == 0);  // theta tau = id
  CHECK(d.delta_minus_plus.empty());
  CHECK(d.weyl.size() == 2);
}

TEST_CASE("split n=2: single root entirely in the minus part") {
  auto r = build_realization(Preset::Split, 2);
  auto d = compute_root_datum(r);
  REQUIRE(d.positive.size() == 1);
  const auto& root = d.roots[d.positive[0]];
  CHECK(root.mult_plus == 0);
  CHECK(root.mult_minus == 1);
  CHECK(d.weyl.size() == 1);  // no reflections available

  // beta(Y) = 2 on the generator, so H_beta = Y/2
  CHECK(root.beta[0] == doctest::Approx(2.0));
  CHECK(root.h_beta[0] == doctest::Approx(0.5));
}

TEST_CASE("supq(3,2,1): block structure of the multiplicities") {
  auto r = build_realization(Preset::SUpq, 3, 2, 1);
  auto d = compute_root_datum(r);
  REQUIRE(d.positive.size() == 3);
  int plus_roots = 0, minus_roots = 0;
  for (int idx : d.positive) {
    const auto& root = d.roots[idx];
    CHECK(root.mult_plus + root.mult_minus == 1);
    if (root.mult_plus == 1) ++plus_roots;
    if (root.mult_minus == 1) ++minus_roots;
  }
  CHECK(plus_roots == 1);   // the within-block root e1 - e2
  CHECK(minus_roots == 2);  // the block-crossing roots e1 - e3, e2 - e3
  CHECK(d.weyl.size() == 2);
  CHECK(cone_generators(d).size() == 2);

  // hand-computed: H_{e1-e3} corresponds to diag(1/2, 0, -1/2), which has
  // coordinates (1/2, 1/2) in the partial-sum basis
  bool found = false;
  for (int idx : d.delta_minus_plus) {
    const auto& root = d.roots[idx];
    if ((root.beta - (Rvec(2) << 1.0, 1.0).finished()).norm() < 1e-9) {
      found = true;
      CHECK((root.h_beta - (Rvec(2) << 0.5, 0.5).finished()).norm() < 1e-10);
    }
  }
  CHECK(found);
}

TEST_CASE("compact n=3: the full S3 Weyl group") {
  auto r = build_realization(Preset::Compact, 3);
  auto d = compute_root_datum(r);
  CHECK(d.positive.size() == 3);
  CHECK(d.weyl.size() == 6);
  CHECK(cone_generators(d).empty());
  for (const auto& w : d.weyl) {
    REQUIRE(w.representative.has_value());
    CHECK(w.rep_error < 1e-8);
  }
}

TEST_CASE("root datum structural identities") {
  for (auto preset : {Preset::Compact, Preset::Split, Preset::SUpq}) {
    int n = preset == Preset::Split ? 2 : 3;
    auto r = preset == Preset::SUpq ? build_realization(preset, 3, 2, 1)
                                    : build_realization(preset, n);
    auto d = compute_root_datum(r);

    // roots come in +- pairs with equal multiplicities
    for (const auto& root : d.roots) {
      bool paired = false;
      for (const auto& other : d.roots)
        if ((root.beta + other.beta).norm() < 1e-9) {
          paired = true;
          CHECK(root.mult_plus == other.mult_plus);
          CHECK(root.mult_minus == other.mult_minus);
        }
      CHECK(paired);
    }

    // beta(H_beta) = 1 and kappa(H_beta, ker beta) = 0
    for (const auto& root : d.roots) {
      CHECK(std::abs(root.beta.dot(root.h_beta) - 1.0) < 1e-12);
      // kernel basis: project the coordinate axes onto ker beta
      const int rk = r.rank_a_minus_tau();
      for (int k = 0; k < rk; ++k) {
        Rvec e = Rvec::Zero(rk);
        e[k] = 1.0;
        Rvec ker = e - (root.beta.dot(e) / root.beta.squaredNorm()) * root.beta;
        if (ker.norm() < 1e-12) continue;
        double patch = root.beta.dot(ker);
        REQUIRE(std::abs(patch) < 1e-12);
        double val = (root.h_beta.transpose() * d.killing_gram * ker).value();
        CHECK(std::abs(val) < 1e-10);
      }
    }

    // dimension count: sum of real root-space dimensions + dim c = dim g
    int root_dims = 0;
    for (const auto& root : d.roots) root_dims += 2 * (root.mult_plus + root.mult_minus);
    CHECK(root_dims + 2 * (r.n() - 1) == r.dim_g());

    // reflections fix their kernel and negate H_beta; Weyl closure holds
    for (int idx : d.positive) {
      const auto& root = d.roots[idx];
      if (root.mult_plus == 0) continue;
      Rmat s = Rmat::Identity(r.rank_a_minus_tau(), r.rank_a_minus_tau()) -
               2.0 * root.h_beta * root.beta.transpose();
      CHECK((s * s - Rmat::Identity(s.rows(), s.cols())).norm() < 1e-12);
      CHECK((s * root.h_beta + root.h_beta).norm() < 1e-12);
    }

    // positive root spaces live inside n
    Rmat n_cols = basis_columns(r.basis_n);
    int n_rank = numeric_rank(n_cols);
    for (int idx : d.positive) {
      const auto& root = d.roots[idx];
      std::vector<Cmat> joint = r.basis_n;
      for (const auto& v : root.space_plus) joint.push_back(v);
      for (const auto& v : root.space_minus) joint.push_back(v);
      CHECK(numeric_rank(basis_columns(joint)) == n_rank);
    }

    // theta tau preserves each root space (the split is well defined);
    // the real span of the complex space is spanned by {v, iv}
    for (const auto& root : d.roots) {
      std::vector<Cmat> space;
      for (const auto& v : root.space_plus) {
        space.push_back(v);
        space.push_back(Complex(0, 1) * v);
      }
      for (const auto& v : root.space_minus) {
        space.push_back(v);
        space.push_back(Complex(0, 1) * v);
      }
      int base_rank = numeric_rank(basis_columns(space));
      CHECK(base_rank == 2 * (root.mult_plus + root.mult_minus));
      std::vector<Cmat> enlarged = space;
      for (const auto& v : space) enlarged.push_back(r.theta(r.tau(v)));
      CHECK(numeric_rank(basis_columns(enlarged)) == base_rank);
    }
  }
}

TEST_CASE("weyl action is an isometry permuting roots, with faithful reps") {
  auto r = build_realization(Preset::SUpq, 3, 2, 1);
  auto d = compute_root_datum(r);
  for (const auto& w : d.weyl) {
    Rmat g1 = w.action.transpose() * d.killing_gram * w.action;
    CHECK((g1 - d.killing_gram).norm() < 1e-10);
    REQUIRE(w.representative.has_value());
    CHECK(w.rep_error < 1e-8);
    const Cmat& k = *w.representative;
    CHECK(frob(k * k.adjoint() - Cmat::Identity(3, 3)) < 1e-10);
    CHECK(frob(r.tau_group(k) - k) < 1e-10);
  }
}

TEST_CASE("w H_beta = H_{w beta} (recomputed independently)") {
  auto real = build_realization(Preset::Compact, 3);
  auto d = compute_root_datum(real);
  for (const auto& w : d.weyl) {
    for (const auto& root : d.roots) {
      Rvec wbeta = w.action.transpose().inverse() * root.beta;
      Rvec lhs = w.action * root.h_beta;
      Rvec rhs = compute_h_beta(real, wbeta);
      CHECK((lhs - rhs).norm() < 1e-10);
    }
  }
}

TEST_CASE("split n=3 is rejected: non-reduced restricted system") {
  auto r = build_realization(Preset::Split, 3);
  CHECK_THROWS_AS(compute_root_datum(r), RootDatumError);
}
