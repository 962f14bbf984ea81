#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace symspace {

using Complex = std::complex<double>;
using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;
using Rmat = Eigen::MatrixXd;
using Rvec = Eigen::VectorXd;

inline double frob(const Cmat& x) { return x.norm(); }

/// Real coordinates of a complex n x n matrix: (Re, Im) pairs, row-major.
Rvec embed_real(const Cmat& x);

/// Inverse of embed_real for an n x n matrix.
Cmat unembed_real(const Rvec& v, int n);

/// Stack a list of matrices as real column vectors (2n^2 x k).
Rmat basis_columns(const std::vector<Cmat>& basis);

/// Matrix exponential by scaling-and-squaring with a [6/6] Pade approximant.
Cmat expm(const Cmat& x);

}  // namespace symspace
