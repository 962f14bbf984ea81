#include "symspace/iwasawa.hpp"

#include <cmath>

namespace symspace {

IwasawaFactors iwasawa_nak(const SymmetricSpaceRealization& real, const Cmat& g) {
  const int n = real.n();
  if (!g.allFinite()) throw IwasawaError("iwasawa_nak: non-finite input");
  const Cmat& u = real.frame();
  Cmat gf = u.adjoint() * g * u;

  // In the frame g = L k with L = n a upper triangular (positive diagonal)
  // and k unitary, equivalently g* = k* L*. A Householder QR of the
  // flip-conjugated adjoint delivers the lower-triangular factor without ever
  // forming g g* (whose Gram conditioning squares and wrecks small pivots).
  Cmat madj = gf.adjoint();
  Cmat flipped(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flipped(i, j) = madj(n - 1 - i, n - 1 - j);
  Eigen::HouseholderQR<Cmat> qr(flipped);
  Cmat qq = qr.householderQ();
  Cmat rr = qr.matrixQR().triangularView<Eigen::Upper>();
  Cmat kstar(n, n), lstar(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      kstar(i, j) = qq(n - 1 - i, n - 1 - j);
      lstar(i, j) = rr(n - 1 - i, n - 1 - j);
    }
  // normalize the triangular diagonal to positive reals
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double mag = std::abs(lstar(i, i));
    dmax = std::max(dmax, mag);
    dmin = std::min(dmin, mag);
  }
  if (!(dmin > 0.0) || !std::isfinite(dmax))
    throw IwasawaError("iwasawa_nak: singular input (triangular pivot " +
                           std::to_string(dmin) + ")",
                       dmin > 0.0 ? dmax / dmin : INFINITY);
  for (int i = 0; i < n; ++i) {
    Complex phase = lstar(i, i) / std::abs(lstar(i, i));
    lstar.row(i) *= std::conj(phase);
    kstar.col(i) *= phase;
  }

  Cmat lf = lstar.adjoint();  // n a, upper triangular, positive diagonal
  Cmat kf = kstar.adjoint();
  Cmat af = Cmat::Zero(n, n);
  Cmat nf = lf;
  for (int j = 0; j < n; ++j) {
    af(j, j) = lf(j, j).real();
    nf.col(j) /= lf(j, j).real();
  }

  IwasawaFactors f;
  f.n_part = u * nf * u.adjoint();
  f.a_part = u * af * u.adjoint();
  f.k_part = u * kf * u.adjoint();
  Rvec loglam(n);
  for (int i = 0; i < n; ++i) loglam[i] = std::log(af(i, i).real());
  try {
    f.log_a = real.a_coordinates_of_frame_diagonal(loglam);
  } catch (const std::invalid_argument& e) {
    // the A-logarithm left its subspace: double precision ran out on an
    // extreme group element
    throw IwasawaError(std::string("iwasawa_nak: conditioning failure (") + e.what() + ")",
                       dmax / dmin);
  }
  return f;
}

Rvec log_a(const SymmetricSpaceRealization& real, const Cmat& a_part) {
  Rvec d = real.frame_diagonal(a_part);  // throws if not diagonal in the frame
  Rvec loglam(d.size());
  for (int i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw std::invalid_argument("log_a: input is not a positive element of A");
    loglam[i] = std::log(d[i]);
  }
  return real.a_coordinates_of_frame_diagonal(loglam);
}

Rvec phi(const SymmetricSpaceRealization& real, const Cmat& g) {
  IwasawaFactors f = iwasawa_nak(real, g);
  return f.log_a.head(real.rank_a_minus_tau());
}

}  // namespace symspace
