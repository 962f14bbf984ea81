#pragma once

#include "symspace/roots.hpp"

namespace symspace {

enum class Verdict { Inside, Outside, Boundary, Indeterminate };

std::string to_string(Verdict v);

/// The claimed moment image conv(W.X) + cone(cone_gens).
struct MomentImageModel {
  Rvec base_point;
  std::vector<Rvec> vertices;   // Weyl orbit of the base point, deduplicated
  std::vector<Rvec> cone_gens;  // {-H_beta : beta in Delta^+_-}
  double tol = 1e-8;
};

struct MembershipResult {
  Verdict verdict = Verdict::Indeterminate;
  /// Signed boundary proxy: the best separation value over box-normalized
  /// functionals. Positive outside, negative strictly inside, ~0 on the
  /// boundary.
  double slack = 0.0;
  // inside certificate: y = sum lambda_i v_i + sum mu_j g_j
  Rvec hull_weights, cone_weights;
  // outside certificate: separator(y) > hull_bound and separator(g_j) <= 0
  Rvec separator;
  double hull_bound = 0.0;
};

struct LocalCone {
  Rvec apex;
  std::vector<Rvec> generators;
};

MomentImageModel build_model(const RestrictedRootDatum& datum, const Rvec& base_point,
                             double tol = 1e-8);

/// LP feasibility of y in conv(vertices) + cone(generators), with a signed
/// slack from the dual separation LP.
MembershipResult membership_minkowski(const Rvec& y, const MomentImageModel& model);

/// Local cone of the image at the vertex w(X) (index into datum.weyl):
/// {-beta(w X) H_beta : beta positive, mult_plus > 0, beta(w X) != 0}
/// union {-H_beta : beta positive, mult_minus > 0}.
LocalCone local_cone_at(const MomentImageModel& model, const RestrictedRootDatum& datum,
                        int weyl_index);

/// A cone is proper iff it contains no line.
bool is_proper_cone(const std::vector<Rvec>& generators);

/// Membership in cap_w (apex_w + cone_w) over the given local cones.
MembershipResult membership_intersection(const Rvec& y, const std::vector<LocalCone>& cones,
                                         double tol = 1e-8);

/// l1 residual of the best representation y - apex = sum mu_j g_j, mu >= 0.
double cone_residual(const Rvec& y, const Rvec& apex, const std::vector<Rvec>& generators);

/// Index of the vertex with beta(v) >= 0 for every positive root with
/// mult_plus > 0 (the W-dominant orbit point).
int dominant_vertex(const MomentImageModel& model, const RestrictedRootDatum& datum);

}  // namespace symspace
