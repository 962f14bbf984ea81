#include "symspace/realization.hpp"

#include "symspace/linops.hpp"

#include <cmath>
#include <sstream>

namespace symspace {

namespace {

Cmat unit(int n, int i, int j) {
  Cmat e = Cmat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

std::vector<Cmat> sl_basis(int n) {
  std::vector<Cmat> basis;
  const Complex im(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      basis.push_back(unit(n, i, j));
      basis.push_back(im * unit(n, i, j));
    }
  for (int k = 0; k + 1 < n; ++k) {
    Cmat d = unit(n, k, k) - unit(n, k + 1, k + 1);
    basis.push_back(d);
    basis.push_back(im * d);
  }
  return basis;
}

// partial-sum diagonal basis: lexicographically decreasing joint eigenvalues
// down the standard diagonal ordering
std::vector<Cmat> partial_sum_diagonals(int n) {
  std::vector<Cmat> basis;
  for (int k = 1; k < n; ++k) {
    Cmat f = Cmat::Zero(n, n);
    for (int i = 0; i < k; ++i) f(i, i) = 1.0;
    f -= (static_cast<double>(k) / n) * Cmat::Identity(n, n);
    basis.push_back(f);
  }
  return basis;
}

double max_commutator(const std::vector<Cmat>& b) {
  double m = 0.0;
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      m = std::max(m, frob(b[i] * b[j] - b[j] * b[i]));
  return m;
}

}  // namespace

Preset preset_from_string(const std::string& s) {
  if (s == "compact") return Preset::Compact;
  if (s == "split") return Preset::Split;
  if (s == "supq") return Preset::SUpq;
  throw std::invalid_argument("unknown preset: " + s);
}

std::string to_string(Preset p) {
  switch (p) {
    case Preset::Compact: return "compact";
    case Preset::Split: return "split";
    case Preset::SUpq: return "supq";
  }
  return "?";
}

Cmat SymmetricSpaceRealization::tau(const Cmat& x) const {
  switch (preset_) {
    case Preset::Compact: return -x.adjoint();
    case Preset::Split: return x.conjugate();
    case Preset::SUpq: return -(ipq_ * x.adjoint() * ipq_);
  }
  throw std::logic_error("bad preset");
}

Cmat SymmetricSpaceRealization::tau_group(const Cmat& g) const {
  switch (preset_) {
    case Preset::Compact: return g.adjoint().inverse();
    case Preset::Split: return g.conjugate();
    case Preset::SUpq: return ipq_ * g.adjoint().inverse() * ipq_;
  }
  throw std::logic_error("bad preset");
}

Complex SymmetricSpaceRealization::killing(const Cmat& x, const Cmat& y) const {
  return 2.0 * static_cast<double>(n_) * (x * y).trace();
}

double SymmetricSpaceRealization::pairing(const Cmat& x, const Cmat& y) const {
  return killing(x, y).imag();
}

Rvec SymmetricSpaceRealization::frame_diagonal(const Cmat& x, double tol_off) const {
  Cmat d = frame_.adjoint() * x * frame_;
  Cmat off = d;
  off.diagonal().setZero();
  double worst = off.cwiseAbs().maxCoeff();
  for (int i = 0; i < n_; ++i) worst = std::max(worst, std::abs(d(i, i).imag()));
  if (worst > tol_off) {
    std::ostringstream msg;
    msg << "matrix is not real-diagonal in the frame (off/imag magnitude " << worst << ")";
    throw std::invalid_argument(msg.str());
  }
  return d.diagonal().real();
}

Rvec SymmetricSpaceRealization::a_coordinates(const Cmat& x) const {
  return a_coordinates_of_frame_diagonal(frame_diagonal(x));
}

Rvec SymmetricSpaceRealization::a_coordinates_of_frame_diagonal(const Rvec& d) const {
  Rvec c = a_qr_->solve(d);
  double resid = (a_frame_patterns_ * c - d).norm();
  // scale-relative: log coordinates of badly conditioned group elements carry
  // rounding of order eps * |d|, which is not an out-of-subspace signal
  if (resid > 1e-6 * (1.0 + d.norm())) {
    std::ostringstream msg;
    msg << "a_coordinates: input is not in a (residual " << resid << ")";
    throw std::invalid_argument(msg.str());
  }
  return c;
}

Cmat SymmetricSpaceRealization::a_from_coordinates(const Rvec& coords) const {
  Cmat x = Cmat::Zero(n_, n_);
  for (int j = 0; j < coords.size(); ++j) x += coords[j] * basis_a[j];
  return x;
}

Cmat SymmetricSpaceRealization::a_minus_tau_matrix(const Rvec& coords) const {
  Cmat x = Cmat::Zero(n_, n_);
  for (int j = 0; j < coords.size(); ++j) x += coords[j] * basis_a_minus_tau[j];
  return x;
}

SymmetricSpaceRealization::ManinParts SymmetricSpaceRealization::manin_split(const Cmat& x) const {
  Rvec v = embed_real(x);
  Rvec c = manin_qr_->solve(v);
  ManinParts parts;
  parts.h_part = Cmat::Zero(n_, n_);
  parts.c_part = Cmat::Zero(n_, n_);
  parts.n_part = Cmat::Zero(n_, n_);
  int idx = 0;
  for (int j = 0; j < dim_h_; ++j, ++idx) parts.h_part += c[idx] * basis_h[j];
  for (int j = 0; j < dim_c_minus_tau_; ++j, ++idx) parts.c_part += c[idx] * basis_c_minus_tau[j];
  for (int j = 0; j < dim_n_; ++j, ++idx) parts.n_part += c[idx] * basis_n[j];
  parts.residual = frob(parts.h_part + parts.c_part + parts.n_part - x);
  return parts;
}

Rvec SymmetricSpaceRealization::coordinates(const std::vector<Cmat>& basis, const Cmat& x,
                                            double* residual) const {
  return coordinates_in(basis_columns(basis), embed_real(x), residual);
}

SymmetricSpaceRealization SymmetricSpaceRealization::build(Preset preset, int n, int p, int q,
                                                           Tolerances tol) {
  if (n < 2) throw std::invalid_argument("build_realization: n must be >= 2");
  if (preset == Preset::SUpq) {
    if (p < 1 || q < 1 || p + q != n)
      throw std::invalid_argument("build_realization: supq requires p,q >= 1 and p+q = n");
  } else if (p != 0 || q != 0) {
    throw std::invalid_argument("build_realization: p,q only apply to the supq preset");
  }

  SymmetricSpaceRealization r;
  r.preset_ = preset;
  r.n_ = n;
  r.p_ = p;
  r.q_ = q;
  r.tol_ = tol;
  if (preset == Preset::SUpq) {
    r.ipq_ = Cmat::Identity(n, n);
    for (int i = p; i < n; ++i) r.ipq_(i, i) = -1.0;
  }

  const Complex im(0.0, 1.0);
  r.basis_g = sl_basis(n);

  // eigenspace bases of tau and theta by projecting the g basis
  std::vector<Cmat> hc, qc, kc, pc;
  for (const auto& b : r.basis_g) {
    hc.push_back(b + r.tau(b));
    qc.push_back(b - r.tau(b));
    kc.push_back(b + r.theta(b));
    pc.push_back(b - r.theta(b));
  }
  r.basis_h = independent_subset(hc);
  r.basis_q = independent_subset(qc);
  r.basis_k = independent_subset(kc);
  r.basis_p = independent_subset(pc);

  // a^{-tau}, a^{tau} and the frame are preset-specific
  if (preset == Preset::Compact || preset == Preset::SUpq) {
    r.basis_a_minus_tau = partial_sum_diagonals(n);
    r.frame_ = Cmat::Identity(n, n);
  } else {  // split
    const int m = n / 2;
    for (int k = 0; k < m; ++k) {
      Cmat j = im * (unit(n, 2 * k, 2 * k + 1) - unit(n, 2 * k + 1, 2 * k));
      r.basis_a_minus_tau.push_back(j);
    }
    for (int k = 0; k + 1 < m; ++k) {
      Cmat t = unit(n, 2 * k, 2 * k) + unit(n, 2 * k + 1, 2 * k + 1) -
               unit(n, 2 * k + 2, 2 * k + 2) - unit(n, 2 * k + 3, 2 * k + 3);
      r.basis_a_tau.push_back(t);
    }
    if (n % 2 == 1) {
      Cmat t = unit(n, 2 * m - 2, 2 * m - 2) + unit(n, 2 * m - 1, 2 * m - 1) -
               2.0 * unit(n, n - 1, n - 1);
      r.basis_a_tau.push_back(t);
    }
    // frame columns in lexicographically decreasing joint-eigenvalue order:
    // (plane 1,+), ..., (plane m,+), [null column], (plane m,-), ..., (plane 1,-)
    const double s = 1.0 / std::sqrt(2.0);
    r.frame_ = Cmat::Zero(n, n);
    for (int k = 0; k < m; ++k) {
      r.frame_(2 * k, k) = s;
      r.frame_(2 * k + 1, k) = -im * s;
      r.frame_(2 * k, n - 1 - k) = s;
      r.frame_(2 * k + 1, n - 1 - k) = im * s;
    }
    if (n % 2 == 1) r.frame_(n - 1, m) = 1.0;
  }
  r.basis_a = r.basis_a_minus_tau;
  r.basis_a.insert(r.basis_a.end(), r.basis_a_tau.begin(), r.basis_a_tau.end());

  // n: strictly upper triangular in the frame
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Cmat e = r.frame_ * unit(n, i, j) * r.frame_.adjoint();
      r.basis_n.push_back(e);
      r.basis_n.push_back(im * e);
    }

  // c^{-tau} = a^{-tau} + i a^{tau}
  r.basis_c_minus_tau = r.basis_a_minus_tau;
  for (const auto& t : r.basis_a_tau) r.basis_c_minus_tau.push_back(im * t);

  r.dim_h_ = static_cast<int>(r.basis_h.size());
  r.dim_c_minus_tau_ = static_cast<int>(r.basis_c_minus_tau.size());
  r.dim_n_ = static_cast<int>(r.basis_n.size());

  std::vector<Cmat> manin = r.basis_h;
  manin.insert(manin.end(), r.basis_c_minus_tau.begin(), r.basis_c_minus_tau.end());
  manin.insert(manin.end(), r.basis_n.begin(), r.basis_n.end());
  r.manin_qr_ = std::make_shared<Eigen::ColPivHouseholderQR<Rmat>>(basis_columns(manin));

  r.a_frame_patterns_.resize(n, static_cast<int>(r.basis_a.size()));
  for (size_t j = 0; j < r.basis_a.size(); ++j)
    r.a_frame_patterns_.col(static_cast<int>(j)) = r.frame_diagonal(r.basis_a[j], 1e-12);
  r.a_qr_ = std::make_shared<Eigen::ColPivHouseholderQR<Rmat>>(r.a_frame_patterns_);

  r.validate();
  return r;
}

void SymmetricSpaceRealization::validate() const {
  const double st = tol_.structural;
  auto fail = [](const std::string& what) { throw RealizationError("realization check failed: " + what); };

  for (const auto& b : basis_g) {
    if (std::abs(b.trace()) > 10 * st) fail("traceless basis");
    if (frob(theta(theta(b)) - b) > st) fail("theta^2 = id");
    if (frob(tau(tau(b)) - b) > st) fail("tau^2 = id");
    if (frob(theta(tau(b)) - tau(theta(b))) > st) fail("theta tau = tau theta");
  }

  const int dg = dim_g();
  const int dh = static_cast<int>(basis_h.size());
  if (dh != n_ * n_ - 1) fail("dim h");
  if (static_cast<int>(basis_q.size()) != dg - dh) fail("dim q");
  if (static_cast<int>(basis_k.size()) != n_ * n_ - 1) fail("dim k");
  if (static_cast<int>(basis_p.size()) != dg - (n_ * n_ - 1)) fail("dim p");

  {
    std::vector<Cmat> hq = basis_h;
    hq.insert(hq.end(), basis_q.begin(), basis_q.end());
    if (numeric_rank(basis_columns(hq)) != dg) fail("g = h + q");
    std::vector<Cmat> kp = basis_k;
    kp.insert(kp.end(), basis_p.begin(), basis_p.end());
    if (numeric_rank(basis_columns(kp)) != dg) fail("g = k + p");
  }

  if (max_commutator(basis_a) > st) fail("a abelian");
  for (const auto& b : basis_a_minus_tau) {
    if (frob(theta(b) + b) > st || frob(tau(b) + b) > st) fail("a^{-tau} in p cap q");
  }
  for (const auto& b : basis_a_tau) {
    if (frob(theta(b) + b) > st || frob(tau(b) - b) > st) fail("a^{tau} in p cap h");
  }

  // a maximal abelian in p: centralizer of a inside p has dimension dim a
  {
    const int dp = static_cast<int>(basis_p.size());
    Rmat stacked(static_cast<Eigen::Index>(basis_a.size()) * 2 * n_ * n_, dp);
    for (size_t j = 0; j < basis_a.size(); ++j)
      for (int i = 0; i < dp; ++i)
        stacked.block(static_cast<Eigen::Index>(j) * 2 * n_ * n_, i, 2 * n_ * n_, 1) =
            embed_real(basis_a[j] * basis_p[i] - basis_p[i] * basis_a[j]);
    int null_dim = dp - numeric_rank(stacked);
    if (null_dim != static_cast<int>(basis_a.size())) fail("a maximal abelian in p");
  }

  // centralizer of a^{-tau} in g is a Cartan subalgebra (dimension 2(n-1))
  {
    const int dgb = static_cast<int>(basis_g.size());
    Rmat stacked(static_cast<Eigen::Index>(basis_a_minus_tau.size()) * 2 * n_ * n_, dgb);
    for (size_t j = 0; j < basis_a_minus_tau.size(); ++j)
      for (int i = 0; i < dgb; ++i)
        stacked.block(static_cast<Eigen::Index>(j) * 2 * n_ * n_, i, 2 * n_ * n_, 1) = embed_real(
            basis_a_minus_tau[j] * basis_g[i] - basis_g[i] * basis_a_minus_tau[j]);
    int null_dim = dgb - numeric_rank(stacked);
    if (null_dim != 2 * (n_ - 1)) fail("z(a^{-tau}) is a Cartan subalgebra");
  }

  // h cap n = 0
  {
    std::vector<Cmat> hn = basis_h;
    hn.insert(hn.end(), basis_n.begin(), basis_n.end());
    if (numeric_rank(basis_columns(hn)) != dim_h_ + dim_n_) fail("h cap n = 0");
  }

  // Manin triple: both factors isotropic for Im kappa, cross pairing nondegenerate
  {
    if (dim_h_ + dim_c_minus_tau_ + dim_n_ != dg) fail("Manin dimension count");
    double iso_h = 0.0;
    for (const auto& x : basis_h)
      for (const auto& y : basis_h) iso_h = std::max(iso_h, std::abs(pairing(x, y)));
    std::vector<Cmat> dual = basis_c_minus_tau;
    dual.insert(dual.end(), basis_n.begin(), basis_n.end());
    double iso_d = 0.0;
    for (const auto& x : dual)
      for (const auto& y : dual) iso_d = std::max(iso_d, std::abs(pairing(x, y)));
    if (iso_h > st || iso_d > st) fail("Lagrangian isotropy");
    Rmat gram(dim_h_, dim_h_);
    for (int i = 0; i < dim_h_; ++i)
      for (int j = 0; j < dim_h_; ++j) gram(i, j) = pairing(basis_h[i], dual[j]);
    if (smallest_singular_value(gram) < 1e-6) fail("cross pairing nondegenerate");
  }

  if (frob(frame_.adjoint() * frame_ - Cmat::Identity(n_, n_)) > st) fail("frame unitary");
  for (const auto& b : basis_a) frame_diagonal(b, 1e-12);

  // frame columns ordered so the lexicographic positive system (a^{-tau}
  // basis first, then a^{tau} basis) is exactly the upper triangle
  {
    Rmat vals(n_, static_cast<int>(basis_a.size()));
    for (size_t j = 0; j < basis_a.size(); ++j)
      vals.col(static_cast<int>(j)) = frame_diagonal(basis_a[j], 1e-12);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        double lead = 0.0;
        for (int k = 0; k < vals.cols(); ++k) {
          double d = vals(i, k) - vals(j, k);
          if (std::abs(d) > 1e-9) {
            lead = d;
            break;
          }
        }
        if (lead <= 0.0) fail("lexicographic positivity of the frame order");
      }
  }
}

SymmetricSpaceRealization build_realization(Preset preset, int n, int p, int q, Tolerances tol) {
  return SymmetricSpaceRealization::build(preset, n, p, q, tol);
}

}  // namespace symspace
