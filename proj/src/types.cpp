#include "symspace/types.hpp"

#include <stdexcept>

namespace symspace {

Rvec embed_real(const Cmat& x) {
  const int n = static_cast<int>(x.rows());
  Rvec v(2 * n * x.cols());
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      v[k++] = x(i, j).real();
      v[k++] = x(i, j).imag();
    }
  }
  return v;
}

Cmat unembed_real(const Rvec& v, int n) {
  if (v.size() != 2 * n * n) throw std::invalid_argument("unembed_real: size mismatch");
  Cmat x(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      x(i, j) = Complex(v[k], v[k + 1]);
      k += 2;
    }
  }
  return x;
}

Rmat basis_columns(const std::vector<Cmat>& basis) {
  if (basis.empty()) return Rmat(0, 0);
  const int rows = static_cast<int>(2 * basis[0].rows() * basis[0].cols());
  Rmat m(rows, static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) m.col(static_cast<int>(j)) = embed_real(basis[j]);
  return m;
}

Cmat expm(const Cmat& x) {
  const int n = static_cast<int>(x.rows());
  // scale so the Pade approximant is accurate to ~1e-16
  double nrm = x.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  while (nrm > 0.25 && squarings < 60) {
    nrm *= 0.5;
    ++squarings;
  }
  Cmat a = x / std::pow(2.0, squarings);

  // [6/6] Pade coefficients of exp
  static const double c[7] = {1.0,        1.0 / 2.0,     5.0 / 44.0,  1.0 / 66.0,
                              1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Cmat p = Cmat::Identity(n, n) * c[6];
  Cmat q = Cmat::Identity(n, n) * c[6];
  for (int k = 5; k >= 0; --k) {
    p = p * a + Cmat::Identity(n, n) * c[k];
    q = q * (-a) + Cmat::Identity(n, n) * c[k];
  }
  Cmat r = q.partialPivLu().solve(p);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

}  // namespace symspace
