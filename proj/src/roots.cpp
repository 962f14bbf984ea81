#include "symspace/roots.hpp"

#include "symspace/linops.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>

namespace symspace {

namespace {

constexpr double kRootMatchTol = 1e-8;
constexpr double kRootGapTol = 1e-6;

bool lex_positive(const Rvec& c) {
  for (int i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > kRootMatchTol) return c[i] > 0.0;
  }
  return false;
}

// Ad(k) restricted to a^{-tau}, as a matrix on coordinates. The deviation of
// Ad(k) a^{-tau} from a^{-tau} is folded into *error.
Rmat ad_restricted(const SymmetricSpaceRealization& real, const Cmat& k, double* error) {
  const int r = real.rank_a_minus_tau();
  Rmat m(r, r);
  Cmat kinv = k.inverse();
  double worst = 0.0;
  Rmat cols = basis_columns(real.basis_a_minus_tau);
  for (int j = 0; j < r; ++j) {
    Cmat img = k * real.basis_a_minus_tau[j] * kinv;
    double resid = 0.0;
    m.col(j) = coordinates_in(cols, embed_real(img), &resid);
    worst = std::max(worst, resid);
  }
  if (error) *error = worst;
  return m;
}

// One-parameter search for a representative of the reflection s: exp(t z)
// with Ad closest to s on a^{-tau}.
std::optional<Cmat> reflection_representative(const SymmetricSpaceRealization& real,
                                              const Rmat& target, const Cmat& z,
                                              double* best_error) {
  auto err_at = [&](double t) {
    Cmat k = expm(t * z);
    double resid = 0.0;
    Rmat m = ad_restricted(real, k, &resid);
    return std::hypot((m - target).norm(), resid);
  };
  const double two_pi = 2.0 * M_PI;
  const int grid = 1440;
  double best_t = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid; ++i) {
    double t = two_pi * i / grid;
    double e = err_at(t);
    if (e < best) {
      best = e;
      best_t = t;
    }
  }
  // golden-section refinement around the grid minimum
  double lo = best_t - two_pi / grid, hi = best_t + two_pi / grid;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = err_at(c), fd = err_at(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = err_at(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = err_at(d);
    }
  }
  double t_star = (lo + hi) / 2.0;
  double e_star = err_at(t_star);
  if (e_star < best) {
    best = e_star;
    best_t = t_star;
  }
  if (best_error) *best_error = best;
  if (best > 1e-8) return std::nullopt;
  return expm(best_t * z);
}

}  // namespace

Rvec compute_h_beta(const SymmetricSpaceRealization& real, const Rvec& beta) {
  const int r = real.rank_a_minus_tau();
  if (beta.size() != r) throw std::invalid_argument("compute_h_beta: covector size");
  if (beta.norm() < kRootMatchTol) throw std::invalid_argument("compute_h_beta: zero covector");
  Rmat gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      gram(i, j) = real.killing(real.basis_a_minus_tau[i], real.basis_a_minus_tau[j]).real();
  Rvec raised = gram.ldlt().solve(beta);
  return raised / beta.dot(raised);
}

RestrictedRootDatum compute_root_datum(const SymmetricSpaceRealization& real) {
  const int n = real.n();
  const int r = real.rank_a_minus_tau();
  RestrictedRootDatum datum;

  datum.killing_gram.resize(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      datum.killing_gram(i, j) =
          real.killing(real.basis_a_minus_tau[i], real.basis_a_minus_tau[j]).real();

  // joint eigenvalues of ad(a^{-tau}) read off in the frame: the (i,j) matrix
  // unit has covector (frame diagonal of b_k)[i] - [j]
  Rmat diag_vals(n, r);
  for (int k = 0; k < r; ++k)
    diag_vals.col(k) = real.frame_diagonal(real.basis_a_minus_tau[k], 1e-12);

  struct Cluster {
    Rvec beta;
    std::vector<std::pair<int, int>> pairs;
  };
  std::vector<Cluster> clusters;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Rvec c = (diag_vals.row(i) - diag_vals.row(j)).transpose();
      if (c.norm() < kRootMatchTol)
        throw RootDatumError("a root of (g,a) vanishes on a^{-tau}");
      bool placed = false;
      for (auto& cl : clusters) {
        double dist = (cl.beta - c).norm();
        if (dist < kRootMatchTol) {
          cl.pairs.emplace_back(i, j);
          placed = true;
          break;
        }
        if (dist < kRootGapTol)
          throw RootDatumError("restricted root clustering is ambiguous (gap violation)");
      }
      if (!placed) clusters.push_back({c, {{i, j}}});
    }

  // reduced system required: no root may be a multiple c != +-1 of another
  // (the negation pairs +-beta are of course present)
  for (size_t a = 0; a < clusters.size(); ++a)
    for (size_t b = a + 1; b < clusters.size(); ++b) {
      const Rvec& x = clusters[a].beta;
      const Rvec& y = clusters[b].beta;
      double cosang = std::abs(x.dot(y)) / (x.norm() * y.norm());
      if (cosang > 1.0 - 1e-10 && std::abs(x.norm() - y.norm()) > kRootMatchTol)
        throw RootDatumError(
            "restricted root system is not reduced (proportional roots beta, c*beta); "
            "this symmetric pair is outside the supported presets");
    }

  const Cmat& u = real.frame();
  for (const auto& cl : clusters) {
    RestrictedRoot root;
    root.beta = cl.beta;
    root.is_positive = lex_positive(cl.beta);
    root.h_beta = compute_h_beta(real, cl.beta);

    // theta-tau acts complex-linearly on each g^beta; split it
    std::vector<Cmat> space;
    for (auto [i, j] : cl.pairs) {
      Cmat e = Cmat::Zero(n, n);
      e(i, j) = 1.0;
      space.push_back(u * e * u.adjoint());
    }
    const int d = static_cast<int>(space.size());
    Cmat tt(d, d);
    // complex coordinates of theta(tau(e_l)) in the basis of frame units
    for (int l = 0; l < d; ++l) {
      Cmat img = real.theta(real.tau(space[l]));
      Cmat imgf = u.adjoint() * img * u;
      for (int m = 0; m < d; ++m) tt(m, l) = imgf(cl.pairs[m].first, cl.pairs[m].second);
      // verify theta-tau preserves this root space
      Cmat recon = Cmat::Zero(n, n);
      for (int m = 0; m < d; ++m) recon += tt(m, l) * space[m];
      if (frob(recon - img) > 1e-9)
        throw RootDatumError("theta-tau does not preserve a restricted root space");
    }
    Eigen::ComplexEigenSolver<Cmat> es(tt);
    for (int l = 0; l < d; ++l) {
      Complex lam = es.eigenvalues()[l];
      Cmat vec = Cmat::Zero(n, n);
      for (int m = 0; m < d; ++m) vec += es.eigenvectors()(m, l) * space[m];
      if (std::abs(lam - 1.0) < 1e-8) {
        root.mult_plus++;
        root.space_plus.push_back(vec);
      } else if (std::abs(lam + 1.0) < 1e-8) {
        root.mult_minus++;
        root.space_minus.push_back(vec);
      } else {
        throw RootDatumError("theta-tau eigenvalue on a root space is not +-1");
      }
    }
    datum.roots.push_back(std::move(root));
  }

  for (size_t i = 0; i < datum.roots.size(); ++i)
    if (datum.roots[i].is_positive) {
      datum.positive.push_back(static_cast<int>(i));
      if (datum.roots[i].mult_minus > 0) datum.delta_minus_plus.push_back(static_cast<int>(i));
    }

  // Weyl group W_{K cap H}: generated by s_beta for positive beta with
  // (g^beta)_+ != 0; with beta(H_beta) = 1 the reflection is Z - 2 beta(Z) H_beta
  std::vector<Rmat> generators;
  std::vector<Cmat> generator_reps;
  std::vector<bool> generator_rep_ok;
  for (int idx : datum.positive) {
    const auto& root = datum.roots[idx];
    if (root.mult_plus == 0) continue;
    Rmat s = Rmat::Identity(r, r) - 2.0 * root.h_beta * root.beta.transpose();
    generators.push_back(s);

    // representative search: z = x + theta(x) for x spanning (g^beta)_+,
    // rescaled to a unit rotation rate
    std::optional<Cmat> rep;
    double err = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 2 && !rep; ++attempt) {
      Cmat x = root.space_plus[0];
      if (attempt == 1) x = Complex(0, 1) * x;
      Cmat z = x + real.theta(x);
      if (frob(z) < 1e-10 * frob(x)) continue;
      z *= std::sqrt(2.0) / frob(z);
      rep = reflection_representative(real, s, z, &err);
    }
    generator_reps.push_back(rep ? *rep : Cmat());
    generator_rep_ok.push_back(rep.has_value());
    if (!rep)
      std::cerr << "warning: no group representative found for a reflection (error " << err
                << "); vertex checks for the affected Weyl elements degrade\n";
  }

  // breadth-first closure
  auto find_element = [&](const Rmat& w) -> int {
    for (size_t i = 0; i < datum.weyl.size(); ++i)
      if ((datum.weyl[i].action - w).norm() < 1e-8) return static_cast<int>(i);
    return -1;
  };
  WeylElement identity;
  identity.action = Rmat::Identity(r, r);
  identity.representative = Cmat::Identity(n, n);
  datum.weyl.push_back(identity);
  for (size_t head = 0; head < datum.weyl.size(); ++head) {
    if (datum.weyl.size() > 1024) throw RootDatumError("Weyl closure did not terminate");
    WeylElement current = datum.weyl[head];
    for (size_t gi = 0; gi < generators.size(); ++gi) {
      Rmat next = generators[gi] * current.action;
      if (find_element(next) >= 0) continue;
      WeylElement e;
      e.action = next;
      if (current.representative && generator_rep_ok[gi])
        e.representative = generator_reps[gi] * (*current.representative);
      datum.weyl.push_back(e);
    }
  }

  // validate actions and representatives
  for (auto& w : datum.weyl) {
    // permutes the root set
    for (const auto& root : datum.roots) {
      Rvec mapped = w.action.transpose().inverse() * root.beta;
      bool found = false;
      for (const auto& other : datum.roots)
        if ((other.beta - mapped).norm() < kRootMatchTol) {
          found = true;
          break;
        }
      if (!found) throw RootDatumError("a Weyl element does not permute the roots");
    }
    // preserves the Killing inner product on a^{-tau}
    Rmat gw = w.action.transpose() * datum.killing_gram * w.action;
    if ((gw - datum.killing_gram).norm() > 1e-8)
      throw RootDatumError("a Weyl element does not preserve the Killing form");
    if (w.representative) {
      double resid = 0.0;
      Rmat ad = ad_restricted(real, *w.representative, &resid);
      w.rep_error = std::hypot((ad - w.action).norm(), resid);
      const Cmat& k = *w.representative;
      double unit = frob(k * k.adjoint() - Cmat::Identity(n, n));
      double taufix = frob(real.tau_group(k) - k);
      if (w.rep_error > 1e-6 || unit > 1e-8 || taufix > 1e-8)
        throw RootDatumError("a Weyl representative fails its fidelity checks");
    }
  }
  // closure under composition
  for (const auto& w1 : datum.weyl)
    for (const auto& w2 : datum.weyl)
      if (find_element(w1.action * w2.action) < 0)
        throw RootDatumError("Weyl elements are not closed under composition");

  return datum;
}

std::vector<Rvec> cone_generators(const RestrictedRootDatum& datum) {
  std::vector<Rvec> gens;
  for (int idx : datum.delta_minus_plus) gens.push_back(-datum.roots[idx].h_beta);
  return gens;
}

}  // namespace symspace
