#include "symspace/convex.hpp"

#include "symspace/lp.hpp"

#include <cmath>

namespace symspace {

namespace {

// max phi'y - z  s.t.  phi'v_i <= z, phi'g_j <= 0, |phi|_1 <= 1.
// The optimum is max(0, separation): positive exactly when y lies outside
// conv(V) + cone(G), and a lower bound for the sup-norm distance there.
struct SeparationLp {
  double value = 0.0;
  Rvec separator;
  double hull_bound = 0.0;
  bool solved = false;
};

SeparationLp separation_lp(const Rvec& y, const std::vector<Rvec>& vertices,
                           const std::vector<Rvec>& gens) {
  const int r = static_cast<int>(y.size());
  const int nv = static_cast<int>(vertices.size());
  const int ng = static_cast<int>(gens.size());
  const bool with_hull = nv > 0;
  const int zc = with_hull ? 2 : 0;  // z = z+ - z- (free) only when a hull part exists
  const int ncols = 2 * r + zc + nv + ng + 1;  // +1: slack of the norm bound
  const int nrows = nv + ng + 1;
  Rmat A = Rmat::Zero(nrows, ncols);
  Rvec b = Rvec::Zero(nrows);
  Rvec c = Rvec::Zero(ncols);

  int row = 0;
  for (int i = 0; i < nv; ++i, ++row) {  // phi'v_i - z + s = 0
    for (int k = 0; k < r; ++k) {
      A(row, k) = vertices[i][k];
      A(row, r + k) = -vertices[i][k];
    }
    A(row, 2 * r) = -1.0;
    A(row, 2 * r + 1) = 1.0;
    A(row, 2 * r + zc + i) = 1.0;
  }
  for (int j = 0; j < ng; ++j, ++row) {  // phi'g_j + s = 0
    for (int k = 0; k < r; ++k) {
      A(row, k) = gens[j][k];
      A(row, r + k) = -gens[j][k];
    }
    A(row, 2 * r + zc + nv + j) = 1.0;
  }
  for (int k = 0; k < 2 * r; ++k) A(row, k) = 1.0;  // |phi|_1 + s = 1
  A(row, ncols - 1) = 1.0;
  b[row] = 1.0;

  for (int k = 0; k < r; ++k) {  // maximize phi'y - z
    c[k] = -y[k];
    c[r + k] = y[k];
  }
  if (with_hull) {
    c[2 * r] = 1.0;
    c[2 * r + 1] = -1.0;
  }

  SeparationLp out;
  LpResult lp = solve_lp(A, b, c);
  if (lp.status != LpStatus::Optimal) return out;
  out.solved = true;
  out.value = -lp.objective;
  out.separator.resize(r);
  for (int k = 0; k < r; ++k) out.separator[k] = lp.x[k] - lp.x[r + k];
  out.hull_bound = with_hull ? lp.x[2 * r] - lp.x[2 * r + 1] : 0.0;
  return out;
}

// max t >= 0 with y + t e in conv(V) + cone(G); +inf when unbounded,
// 0 when y itself is not a member.
double axis_step(const Rvec& y, const Rvec& e, const std::vector<Rvec>& vertices,
                 const std::vector<Rvec>& gens) {
  const int r = static_cast<int>(y.size());
  const int nv = static_cast<int>(vertices.size());
  const int ng = static_cast<int>(gens.size());
  const bool with_hull = nv > 0;
  const int ncols = nv + ng + 1;
  const int nrows = r + (with_hull ? 1 : 0);
  Rmat A = Rmat::Zero(nrows, ncols);
  Rvec b = Rvec::Zero(nrows);
  Rvec c = Rvec::Zero(ncols);
  for (int i = 0; i < nv; ++i) {
    A.col(i).head(r) = vertices[i];
    A(r, i) = 1.0;
  }
  for (int j = 0; j < ng; ++j) A.col(nv + j).head(r) = gens[j];
  A.col(nv + ng).head(r) = -e;
  b.head(r) = y;
  if (with_hull) b[r] = 1.0;
  c[nv + ng] = -1.0;
  LpResult lp = solve_lp(A, b, c);
  if (lp.status == LpStatus::Unbounded) return std::numeric_limits<double>::infinity();
  if (lp.status != LpStatus::Optimal) return 0.0;
  return lp.x[nv + ng];
}

// smallest coordinate-direction step to the boundary from a member point
double axis_depth(const Rvec& y, const std::vector<Rvec>& vertices,
                  const std::vector<Rvec>& gens) {
  const int r = static_cast<int>(y.size());
  double depth = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r && depth > 0.0; ++k) {
    for (double sign : {1.0, -1.0}) {
      Rvec e = Rvec::Zero(r);
      e[k] = sign;
      depth = std::min(depth, axis_step(y, e, vertices, gens));
    }
  }
  if (std::isinf(depth)) depth = 1e30;  // whole-space degenerate case
  return depth;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Inside: return "inside";
    case Verdict::Outside: return "outside";
    case Verdict::Boundary: return "boundary";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

MomentImageModel build_model(const RestrictedRootDatum& datum, const Rvec& base_point,
                             double tol) {
  MomentImageModel model;
  model.base_point = base_point;
  model.tol = tol;
  for (const auto& w : datum.weyl) {
    Rvec v = w.action * base_point;
    bool dup = false;
    for (const auto& existing : model.vertices)
      if ((existing - v).norm() < tol) {
        dup = true;
        break;
      }
    if (!dup) model.vertices.push_back(v);
  }
  model.cone_gens = cone_generators(datum);
  return model;
}

MembershipResult membership_minkowski(const Rvec& y, const MomentImageModel& model) {
  const int r = static_cast<int>(y.size());
  const int nv = static_cast<int>(model.vertices.size());
  const int ng = static_cast<int>(model.cone_gens.size());
  MembershipResult res;

  SeparationLp sep = separation_lp(y, model.vertices, model.cone_gens);
  if (!sep.solved) return res;  // Indeterminate
  res.separator = sep.separator;
  res.hull_bound = sep.hull_bound;

  if (sep.value > model.tol) {
    res.verdict = Verdict::Outside;
    res.slack = sep.value;
    return res;
  }

  // certificate: y = V lambda + G mu, 1'lambda = 1, lambda, mu >= 0
  Rmat A(r + 1, nv + ng);
  Rvec b(r + 1);
  for (int i = 0; i < nv; ++i) {
    A.col(i).head(r) = model.vertices[i];
    A(r, i) = 1.0;
  }
  for (int j = 0; j < ng; ++j) {
    A.col(nv + j).head(r) = model.cone_gens[j];
    A(r, nv + j) = 0.0;
  }
  b.head(r) = y;
  b[r] = 1.0;
  LpResult feas = solve_feasibility(A, b);
  if (feas.status == LpStatus::Optimal) {
    res.hull_weights = feas.x.head(nv);
    res.cone_weights = feas.x.tail(ng);
  } else {
    // the separation saw no gap but the primal cannot reach y: boundary band
    res.verdict = Verdict::Boundary;
    res.slack = sep.value;
    return res;
  }
  res.slack = -axis_depth(y, model.vertices, model.cone_gens);
  res.verdict = (res.slack < -model.tol) ? Verdict::Inside : Verdict::Boundary;
  return res;
}

LocalCone local_cone_at(const MomentImageModel& model, const RestrictedRootDatum& datum,
                        int weyl_index) {
  LocalCone cone;
  const Rvec wx = datum.weyl[weyl_index].action * model.base_point;
  cone.apex = wx;
  for (int idx : datum.positive) {
    const auto& root = datum.roots[idx];
    if (root.mult_plus > 0) {
      double val = root.beta.dot(wx);
      if (std::abs(val) > model.tol) cone.generators.push_back(-val * root.h_beta);
    }
    if (root.mult_minus > 0) cone.generators.push_back(-root.h_beta);
  }
  return cone;
}

bool is_proper_cone(const std::vector<Rvec>& generators) {
  if (generators.empty()) return true;
  const int r = static_cast<int>(generators[0].size());
  const int ng = static_cast<int>(generators.size());
  // improper iff 0 is a nontrivial nonnegative combination: G mu = 0, 1'mu = 1
  Rmat A(r + 1, ng);
  Rvec b = Rvec::Zero(r + 1);
  for (int j = 0; j < ng; ++j) {
    A.col(j).head(r) = generators[j];
    A(r, j) = 1.0;
  }
  b[r] = 1.0;
  LpResult feas = solve_feasibility(A, b);
  return feas.status != LpStatus::Optimal;
}

double cone_residual(const Rvec& y, const Rvec& apex, const std::vector<Rvec>& generators) {
  const int r = static_cast<int>(y.size());
  const int ng = static_cast<int>(generators.size());
  Rmat A(r, ng);
  for (int j = 0; j < ng; ++j) A.col(j) = generators[j];
  LpResult feas = solve_feasibility(A, y - apex);
  return feas.infeasibility;
}

MembershipResult membership_intersection(const Rvec& y, const std::vector<LocalCone>& cones,
                                         double tol) {
  MembershipResult res;
  double worst = 0.0;
  for (const auto& cone : cones) {
    SeparationLp sep = separation_lp(y - cone.apex, {}, cone.generators);
    if (!sep.solved) return res;  // Indeterminate
    worst = std::max(worst, sep.value);
  }
  if (worst > tol) {
    res.verdict = Verdict::Outside;
    res.slack = worst;
    return res;
  }
  // member of every cone: depth is the smallest coordinate step to any wall
  const int r = static_cast<int>(y.size());
  double depth = std::numeric_limits<double>::infinity();
  for (int k = 0; k < r && depth > 0.0; ++k) {
    for (double sign : {1.0, -1.0}) {
      Rvec e = Rvec::Zero(r);
      e[k] = sign;
      for (const auto& cone : cones)
        depth = std::min(depth, axis_step(y - cone.apex, e, {}, cone.generators));
    }
  }
  if (std::isinf(depth)) depth = 1e30;
  res.slack = -depth;
  res.verdict = (res.slack < -tol) ? Verdict::Inside : Verdict::Boundary;
  return res;
}

int dominant_vertex(const MomentImageModel& model, const RestrictedRootDatum& datum) {
  int best = -1;
  double best_violation = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < model.vertices.size(); ++i) {
    double violation = 0.0;
    for (int idx : datum.positive) {
      const auto& root = datum.roots[idx];
      if (root.mult_plus == 0) continue;
      violation = std::max(violation, -root.beta.dot(model.vertices[i]));
    }
    if (violation < best_violation) {
      best_violation = violation;
      best = static_cast<int>(i);
    }
  }
  if (best < 0 || best_violation > model.tol)
    throw std::runtime_error("dominant_vertex: no W-dominant orbit point found");
  return best;
}

}  // namespace symspace
