#pragma once

#include "symspace/types.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace symspace {

enum class Preset { Compact, Split, SUpq };

Preset preset_from_string(const std::string& s);
std::string to_string(Preset p);

struct Tolerances {
  double structural = 1e-12;     // exact-arithmetic identities
  double factorization = 1e-10;  // roundtrip bounds
  double geometry = 1e-8;        // membership / vertex bounds
};

/// Raised when a constructed realization fails its own structure checks.
struct RealizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix model of g = sl(n,C) with a Cartan involution theta(X) = -X* and a
/// commuting antilinear involution tau selected by the preset:
///   compact: tau(X) = -X*            (tau = theta)
///   split:   tau(X) = conj(X)
///   supq:    tau(X) = -I_{p,q} X* I_{p,q}
/// Carries ordered real bases of every subspace used downstream and a unitary
/// frame in which a is diagonal and n is strictly upper triangular.
class SymmetricSpaceRealization {
 public:
  static SymmetricSpaceRealization build(Preset preset, int n, int p = 0, int q = 0,
                                         Tolerances tol = {});

  Preset preset() const { return preset_; }
  int n() const { return n_; }
  int block_p() const { return p_; }
  int block_q() const { return q_; }
  int dim_g() const { return 2 * (n_ * n_ - 1); }
  int rank_a_minus_tau() const { return static_cast<int>(basis_a_minus_tau.size()); }
  const Tolerances& tol() const { return tol_; }

  // ordered real bases
  std::vector<Cmat> basis_g;
  std::vector<Cmat> basis_h, basis_q;          // tau = +1 / -1
  std::vector<Cmat> basis_k, basis_p;          // theta = +1 / -1
  std::vector<Cmat> basis_a_minus_tau, basis_a_tau, basis_a;  // a = a^{-tau} + a^{tau}
  std::vector<Cmat> basis_n;                   // strictly upper triangular in the frame
  std::vector<Cmat> basis_c_minus_tau;         // = a^{-tau} + i a^{tau}

  /// Unitary change of basis: frame().adjoint() * X * frame() is diagonal for
  /// X in a (identity for the compact and supq presets).
  const Cmat& frame() const { return frame_; }

  Cmat theta(const Cmat& x) const { return -x.adjoint(); }
  Cmat tau(const Cmat& x) const;
  /// Group-level involution integrating tau.
  Cmat tau_group(const Cmat& g) const;

  /// Killing form of sl(n,C): kappa(X,Y) = 2n tr(XY).
  Complex killing(const Cmat& x, const Cmat& y) const;
  /// The Manin pairing Im kappa.
  double pairing(const Cmat& x, const Cmat& y) const;

  /// Real diagonal of frame^* X frame (X in a); throws if X is not
  /// diagonal in the frame.
  Rvec frame_diagonal(const Cmat& x, double tol_off = 1e-8) const;

  /// Coordinates in basis_a of an element of a (given as a matrix).
  Rvec a_coordinates(const Cmat& x) const;
  /// Coordinates in basis_a of the element of a whose frame diagonal is d.
  Rvec a_coordinates_of_frame_diagonal(const Rvec& d) const;
  Cmat a_from_coordinates(const Rvec& coords) const;
  /// Matrix from coordinates in basis_a_minus_tau.
  Cmat a_minus_tau_matrix(const Rvec& coords) const;

  /// Split X in g along g = h + c^{-tau} + n (the Manin decomposition).
  struct ManinParts {
    Cmat h_part, c_part, n_part;
    double residual = 0.0;
  };
  ManinParts manin_split(const Cmat& x) const;

  /// Coordinates of X in an arbitrary stored basis (least squares; residual
  /// reported so callers can assert containment).
  Rvec coordinates(const std::vector<Cmat>& basis, const Cmat& x, double* residual = nullptr) const;

 private:
  SymmetricSpaceRealization() = default;
  void validate() const;

  Preset preset_ = Preset::Compact;
  int n_ = 0, p_ = 0, q_ = 0;
  Tolerances tol_;
  Cmat frame_;
  Cmat ipq_;  // diag(+1 x p, -1 x q) for supq
  // cached solvers
  std::shared_ptr<Eigen::ColPivHouseholderQR<Rmat>> manin_qr_;
  std::shared_ptr<Eigen::ColPivHouseholderQR<Rmat>> a_qr_;
  Rmat a_frame_patterns_;  // n x dim(a): frame diagonals of basis_a
  int dim_h_ = 0, dim_c_minus_tau_ = 0, dim_n_ = 0;
};

/// Preset factory mirroring the CLI surface.
SymmetricSpaceRealization build_realization(Preset preset, int n, int p = 0, int q = 0,
                                            Tolerances tol = {});

}  // namespace symspace
