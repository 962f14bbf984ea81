#include "symspace/verifier.hpp"

#include "symspace/iwasawa.hpp"
#include "symspace/linops.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace symspace {

namespace {

Json rvec_to_json(const Rvec& v) {
  Json arr = Json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Rvec rvec_from_json(const Json& j) {
  Rvec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "inside") return Verdict::Inside;
  if (s == "outside") return Verdict::Outside;
  if (s == "boundary") return Verdict::Boundary;
  return Verdict::Indeterminate;
}

}  // namespace

const std::set<std::string>& all_check_names() {
  static const std::set<std::string> names = {"membership",   "vertices", "local_cones",
                                              "oracle_equiv", "poisson",  "escape"};
  return names;
}

double VerificationConfig::effective_window() const {
  if (window > 0.0) return window;
  double nx = base_point.norm();
  return nx > 0.0 ? 2.0 * nx : 2.0;
}

void VerificationConfig::validate() const {
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("config: tol must be positive");
  if (format != "json" && format != "csv")
    throw std::invalid_argument("config: format must be json or csv");
  for (const auto& c : checks)
    if (!all_check_names().count(c)) throw std::invalid_argument("config: unknown check " + c);
}

Json VerificationConfig::to_json() const {
  Json j;
  j["preset"] = to_string(preset);
  j["n"] = n;
  if (preset == Preset::SUpq) {
    j["p"] = p;
    j["q"] = q;
  }
  j["base_point"] = rvec_to_json(base_point);
  j["samples"] = samples;
  j["scale"] = scale;
  j["seed"] = seed;
  j["tol"] = tol;
  j["window"] = effective_window();
  j["checks"] = checks;
  j["format"] = format;
  return j;
}

VerificationConfig VerificationConfig::from_json(const Json& j) {
  VerificationConfig c;
  c.preset = preset_from_string(j.at("preset").get<std::string>());
  c.n = j.at("n").get<int>();
  c.p = j.value("p", 0);
  c.q = j.value("q", 0);
  c.base_point = rvec_from_json(j.at("base_point"));
  c.samples = j.at("samples").get<int>();
  c.scale = j.at("scale").get<double>();
  c.seed = j.at("seed").get<uint64_t>();
  c.tol = j.at("tol").get<double>();
  c.window = j.at("window").get<double>();
  c.checks = j.at("checks").get<std::set<std::string>>();
  c.format = j.at("format").get<std::string>();
  return c;
}

void MembershipStats::add(const SampleRecord& rec) {
  if (rec.verdict == Verdict::Indeterminate) {
    ++failures;
    return;
  }
  ++evaluated;
  switch (rec.verdict) {
    case Verdict::Inside: ++inside; break;
    case Verdict::Boundary: ++boundary; break;
    case Verdict::Outside:
      ++outside;
      max_violation = std::max(max_violation, rec.slack);
      break;
    default: break;
  }
}

MembershipStats MembershipStats::merge(const MembershipStats& a, const MembershipStats& b) {
  MembershipStats m;
  m.evaluated = a.evaluated + b.evaluated;
  m.inside = a.inside + b.inside;
  m.boundary = a.boundary + b.boundary;
  m.outside = a.outside + b.outside;
  m.failures = a.failures + b.failures;
  m.max_violation = std::max(a.max_violation, b.max_violation);
  return m;
}

double MembershipStats::inside_rate_at_tol(double) const {
  if (evaluated == 0) return 0.0;
  return static_cast<double>(inside + boundary) / static_cast<double>(evaluated);
}

std::vector<Rvec> sample_phi(const SymmetricSpaceRealization& real, const Cmat& a, int count,
                             double scale, uint64_t seed, std::vector<int>* failed) {
  std::vector<Rvec> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng = Rng::substream(seed, static_cast<uint64_t>(i));
    GroupSample h = sample_h(real, rng, scale);
    try {
      out.push_back(phi(real, h.g * a));
    } catch (const IwasawaError&) {
      if (failed) failed->push_back(i);
    }
  }
  return out;
}

CoverageReport coverage_statistic(const SymmetricSpaceRealization& real,
                                  const RestrictedRootDatum& datum,
                                  const MomentImageModel& model, int total_samples,
                                  double window, double spacing, double scale, uint64_t seed) {
  const int r = static_cast<int>(model.base_point.size());
  if (r != 2) throw std::invalid_argument("coverage_statistic: implemented for rank 2 only");
  Cmat a = expm(real.a_minus_tau_matrix(model.base_point));

  // three strata: bulk scales for the interior, vertex-anchored ladders for
  // the corners, and rank-1 tubes for the edges. The edge of the orbit
  // polytope between w(X) and s_beta w(X) is swept by the one-parameter
  // subgroup exp(t Z_beta) in K cap H, so jittered samples along those
  // circles cover the edge neighborhoods that plain Gaussian draws starve.
  std::vector<Rvec> samples;
  samples.reserve(total_samples);
  const int bulk = (25 * total_samples) / 100;
  const std::vector<double> bulk_scales = {0.35 * scale, 0.7 * scale, scale, 1.4 * scale,
                                           2.0 * scale};
  int salt = 0;
  for (double s : bulk_scales) {
    std::vector<Rvec> part = sample_phi(real, a, bulk / static_cast<int>(bulk_scales.size()), s,
                                        seed ^ (0xc0ffeeULL + salt++));
    samples.insert(samples.end(), part.begin(), part.end());
  }

  const std::vector<double> ladder = {0.03, 0.07, 0.15, 0.3, 0.5, 0.75, 1.0};
  const int vertex_budget = (3 * total_samples) / 10;
  const int per_step =
      std::max(1, vertex_budget / static_cast<int>(datum.weyl.size() * ladder.size()));
  for (size_t wi = 0; wi < datum.weyl.size(); ++wi) {
    const auto& w = datum.weyl[wi];
    if (!w.representative) continue;
    for (size_t li = 0; li < ladder.size(); ++li) {
      for (int i = 0; i < per_step; ++i) {
        Rng rng =
            Rng::substream(seed ^ (0xabcdULL + 31 * wi + 977 * li), static_cast<uint64_t>(i));
        GroupSample hs = sample_h(real, rng, ladder[li] * scale);
        try {
          samples.push_back(phi(real, (*w.representative) * hs.g * a));
        } catch (const IwasawaError&) {
        }
      }
    }
  }

  // edge tubes: compact sweeps for the plus roots (polytope edges), and
  // noncompact rays for the minus roots (the cone part of the boundary)
  std::vector<Cmat> sweeps;
  std::vector<Cmat> rays;
  for (int idx : datum.positive) {
    const auto& root = datum.roots[idx];
    if (root.mult_plus > 0) {
      Cmat xv = root.space_plus[0];
      Cmat z = xv + real.theta(xv);
      if (frob(z) < 1e-10 * frob(xv)) z = Complex(0, 1) * xv + real.theta(Complex(0, 1) * xv);
      z *= std::sqrt(2.0) / frob(z);
      sweeps.push_back(z);
    }
    if (root.mult_minus > 0) {
      Cmat xv = root.space_minus[0];
      Cmat w = xv - real.theta(xv);
      if (frob(w) < 1e-10 * frob(xv)) {
        Cmat ixv = Complex(0, 1) * xv;
        w = ixv - real.theta(ixv);
      }
      w *= std::sqrt(2.0) / frob(w);
      rays.push_back(w);
    }
  }
  const std::vector<double> jitter = {0.02, 0.06, 0.15, 0.3, 0.5};
  const int fan_budget = rays.size() >= 2 ? total_samples / 5 : 0;
  const int tube_budget = total_samples - bulk - vertex_budget - fan_budget;
  const int tube_kinds = static_cast<int>(sweeps.size() + rays.size());
  double t_max_shared = 1.0;
  if (tube_kinds > 0) {
    const int per_tube =
        std::max(1, tube_budget / static_cast<int>(datum.weyl.size() * tube_kinds *
                                                   jitter.size()));
    // ray length: enough group time that Phi leaves the probe window
    double& t_max = t_max_shared;
    if (!rays.empty()) {
      for (; t_max < 64.0; t_max *= 2.0) {
        try {
          if (phi(real, expm(t_max * rays[0]) * a).norm() > 1.3 * window) break;
        } catch (const IwasawaError&) {
          break;
        }
      }
    }
    for (size_t wi = 0; wi < datum.weyl.size(); ++wi) {
      const auto& w = datum.weyl[wi];
      if (!w.representative) continue;
      for (int zi = 0; zi < tube_kinds; ++zi) {
        const bool is_ray = zi >= static_cast<int>(sweeps.size());
        const Cmat& dir = is_ray ? rays[zi - sweeps.size()] : sweeps[zi];
        for (size_t ji = 0; ji < jitter.size(); ++ji) {
          for (int i = 0; i < per_tube; ++i) {
            Rng rng = Rng::substream(seed ^ (0xed6eULL + 131 * wi + 7 * zi + 40507 * ji),
                                     static_cast<uint64_t>(i));
            double t = is_ray ? rng.uniform(0.0, t_max) : rng.uniform(0.0, 2.0 * M_PI);
            GroupSample hs = sample_h(real, rng, jitter[ji] * scale);
            try {
              samples.push_back(phi(real, (*w.representative) * expm(t * dir) * hs.g * a));
            } catch (const IwasawaError&) {
            }
          }
        }
      }
    }
  }

  // fan stratum: products of all cone-ray flows reach the interior of the
  // recession cone far from either boundary ray
  if (fan_budget > 0) {
    const std::vector<double> fan_jitter = {0.05, 0.15, 0.3};
    const int per_fan = std::max(
        1, fan_budget / static_cast<int>(datum.weyl.size() * fan_jitter.size()));
    for (size_t wi = 0; wi < datum.weyl.size(); ++wi) {
      const auto& w = datum.weyl[wi];
      if (!w.representative) continue;
      for (size_t ji = 0; ji < fan_jitter.size(); ++ji) {
        for (int i = 0; i < per_fan; ++i) {
          Rng rng = Rng::substream(seed ^ (0xfa4ULL + 577 * wi + 13 * ji),
                                   static_cast<uint64_t>(i));
          Cmat flow = Cmat::Identity(real.n(), real.n());
          for (const auto& ray : rays) flow = flow * expm(rng.uniform(0.0, t_max_shared) * ray);
          GroupSample hs = sample_h(real, rng, fan_jitter[ji] * scale);
          try {
            samples.push_back(phi(real, (*w.representative) * flow * hs.g * a));
          } catch (const IwasawaError&) {
          }
        }
      }
    }
  }

  // hash grid over the sample cloud: cell width = spacing
  auto cell_of = [&](const Rvec& v) {
    return std::pair<long, long>(static_cast<long>(std::floor(v[0] / spacing)),
                                 static_cast<long>(std::floor(v[1] / spacing)));
  };
  std::map<std::pair<long, long>, std::vector<int>> cells;
  for (size_t i = 0; i < samples.size(); ++i)
    cells[cell_of(samples[i])].push_back(static_cast<int>(i));

  CoverageReport rep;
  rep.samples_used = static_cast<long>(samples.size());
  const int steps = static_cast<int>(std::ceil(window / spacing));
  for (int gi = -steps; gi <= steps; ++gi)
    for (int gj = -steps; gj <= steps; ++gj) {
      Rvec y(2);
      y << gi * spacing, gj * spacing;
      MembershipResult m = membership_minkowski(y, model);
      if (m.verdict == Verdict::Outside || m.verdict == Verdict::Indeterminate) continue;
      if (m.slack > -spacing / 2.0) continue;  // skip the boundary shell of the grid
      ++rep.grid_points;
      double best = std::numeric_limits<double>::infinity();
      auto [ci, cj] = cell_of(y);
      for (int di = -2; di <= 2 && best > 0.0; ++di)
        for (int dj = -2; dj <= 2; ++dj) {
          auto it = cells.find({ci + di, cj + dj});
          if (it == cells.end()) continue;
          for (int idx : it->second) best = std::min(best, (samples[idx] - y).norm());
        }
      if (std::isinf(best)) best = 2.0 * spacing;  // nothing within two cells
      if (best > rep.covering_radius) {
        rep.covering_radius = best;
        rep.worst_point = y;
      }
    }
  return rep;
}

namespace {

struct Context {
  const VerificationConfig& cfg;
  const SymmetricSpaceRealization& real;
  const RestrictedRootDatum& datum;
  const MomentImageModel& model;
  Cmat a;
};

void run_membership(const Context& ctx, SampleReport& rep) {
  std::vector<int> failed;
  std::vector<Rvec> phis =
      sample_phi(ctx.real, ctx.a, ctx.cfg.samples, ctx.cfg.scale, ctx.cfg.seed, &failed);
  rep.membership.failures += static_cast<long>(failed.size());
  // map surviving values back to their original sample indices
  size_t next_failed = 0;
  int original = 0;
  for (size_t i = 0; i < phis.size(); ++i, ++original) {
    while (next_failed < failed.size() && failed[next_failed] == original) {
      ++next_failed;
      ++original;
    }
    MembershipResult m = membership_minkowski(phis[i], ctx.model);
    SampleRecord rec;
    rec.index = original;
    rec.phi = phis[i];
    rec.verdict = m.verdict;
    rec.slack = m.slack;
    rep.membership.add(rec);
    rep.records.push_back(std::move(rec));
  }
  if (rep.membership.inside_rate_at_tol(ctx.cfg.tol) < 1.0) rep.violations.push_back("membership");
}

void run_vertices(const Context& ctx, SampleReport& rep) {
  bool all_ok = true;
  for (size_t wi = 0; wi < ctx.datum.weyl.size(); ++wi) {
    Rng rng = Rng::substream(ctx.cfg.seed ^ 0x5eed5eedULL, wi);
    FixedPointReport f =
        fixed_point_check(ctx.real, ctx.datum, static_cast<int>(wi), ctx.cfg.base_point, rng);
    VertexCheckOutcome out;
    out.weyl_index = static_cast<int>(wi);
    out.vertex = ctx.datum.weyl[wi].action * ctx.cfg.base_point;
    out.skipped = f.skipped;
    out.error = f.vertex_error;
    out.t_fixed_residual = f.t_fixed_residual;
    rep.vertices.push_back(out);
    if (f.skipped) {
      all_ok = false;
      continue;
    }
    rep.max_vertex_error = std::max(rep.max_vertex_error, f.vertex_error);
    if (f.vertex_error > ctx.cfg.tol || f.t_fixed_residual > ctx.cfg.tol) all_ok = false;
  }
  rep.vertices_all_attained = all_ok;
  if (!all_ok) rep.violations.push_back("vertices");
}

void run_local_cones(const Context& ctx, SampleReport& rep) {
  const double radius = ctx.cfg.effective_window() / 10.0;
  const int want_per_vertex = std::min(200, std::max(20, ctx.cfg.samples / 100));
  rep.local_cones.tested_per_vertex.assign(ctx.datum.weyl.size(), 0);

  for (size_t wi = 0; wi < ctx.datum.weyl.size(); ++wi) {
    LocalCone cone = local_cone_at(ctx.model, ctx.datum, static_cast<int>(wi));
    const Rvec wx = cone.apex;
    const auto& w = ctx.datum.weyl[wi];

    auto test_point = [&](const Rvec& value) {
      if ((value - wx).norm() >= radius) return;
      double resid = cone_residual(value, wx, cone.generators);
      ++rep.local_cones.tested;
      ++rep.local_cones.tested_per_vertex[wi];
      rep.local_cones.max_residual = std::max(rep.local_cones.max_residual, resid);
      if (resid > ctx.cfg.tol) ++rep.local_cones.violations;
    };

    // the main sample stream occasionally wanders near a vertex
    for (const auto& rec : rep.records) test_point(rec.phi);

    // dedicated near-vertex samples h = k_w exp(Y1) exp(Y2), shrinking the
    // spread until enough land inside the radius
    if (!w.representative) continue;
    double local_scale = radius / 5.0;
    for (int round = 0; round < 6 && rep.local_cones.tested_per_vertex[wi] < want_per_vertex;
         ++round) {
      uint64_t salt = 0xc0deULL + 977 * wi + round;
      for (int i = 0; i < want_per_vertex; ++i) {
        Rng rng = Rng::substream(ctx.cfg.seed ^ salt, static_cast<uint64_t>(i));
        GroupSample hs = sample_h(ctx.real, rng, local_scale);
        try {
          test_point(phi(ctx.real, (*w.representative) * hs.g * ctx.a));
        } catch (const IwasawaError&) {
          ++rep.membership.failures;
        }
      }
      local_scale *= 0.5;
    }
  }
  if (rep.local_cones.violations > 0) rep.violations.push_back("local_cones");
}

void run_oracle_equiv(const Context& ctx, SampleReport& rep) {
  const double w = ctx.cfg.effective_window();
  const int r = static_cast<int>(ctx.cfg.base_point.size());
  const double band = 10.0 * ctx.cfg.tol;
  const int probes = std::min(ctx.cfg.samples, 1000);

  std::vector<LocalCone> cones;
  for (size_t wi = 0; wi < ctx.datum.weyl.size(); ++wi) {
    LocalCone cone = local_cone_at(ctx.model, ctx.datum, static_cast<int>(wi));
    if (is_proper_cone(cone.generators)) cones.push_back(std::move(cone));
  }

  Rng rng = Rng::substream(ctx.cfg.seed ^ 0x0eac1eULL, 0);
  for (int i = 0; i < probes; ++i) {
    Rvec y(r);
    for (int k = 0; k < r; ++k) y[k] = rng.uniform(-w, w);
    MembershipResult mink = membership_minkowski(y, ctx.model);
    MembershipResult inter = membership_intersection(y, cones, ctx.cfg.tol);
    ++rep.oracle.probes;
    if (std::abs(mink.slack) <= band || std::abs(inter.slack) <= band) {
      ++rep.oracle.band_excluded;
      continue;
    }
    bool in_m = mink.slack < 0.0;
    bool in_i = inter.slack < 0.0;
    if (in_m != in_i) {
      ++rep.oracle.disagreements;
      rep.oracle.max_disagreement_slack =
          std::max(rep.oracle.max_disagreement_slack, std::abs(mink.slack - inter.slack));
    }
  }
  if (rep.oracle.disagreements > 0) rep.violations.push_back("oracle_equiv");
}

void run_poisson(const Context& ctx, SampleReport& rep) {
  PoissonStats& ps = rep.poisson;
  ps.manin = check_manin_triple(ctx.real);
  bool ok = ps.manin.max_h_isotropy < 1e-12 && ps.manin.max_dual_isotropy < 1e-12 &&
            ps.manin.cross_sigma_min > 1e-6;

  ps.expected_codimension = static_cast<int>(ctx.real.basis_a_tau.size());
  ps.leaf_points = 20;
  for (int i = 0; i < ps.leaf_points; ++i) {
    // ambiguous rank decisions re-sample a fresh point (bounded retries)
    for (uint64_t attempt = 0; attempt < 8; ++attempt) {
      Rng rng = Rng::substream(ctx.cfg.seed ^ 0x1eafULL,
                               static_cast<uint64_t>(i) + (attempt << 32));
      GroupSample hs = sample_h(ctx.real, rng, ctx.cfg.scale);
      OrbitPoint pt = make_orbit_point(ctx.real, hs.g, hs.g_inv, ctx.cfg.base_point);
      try {
        int codim = leaf_codimension(ctx.real, pt);
        if (ps.leaf_codimension < 0) ps.leaf_codimension = codim;
        if (codim != ps.leaf_codimension) ps.codimension_constant = false;
        break;
      } catch (const RankAmbiguity&) {
        if (attempt == 7) ps.codimension_constant = false;
      }
    }
  }
  if (ps.leaf_codimension != ps.expected_codimension || !ps.codimension_constant) ok = false;

  ps.moment_samples = 100;
  const Complex im(0.0, 1.0);
  for (int i = 0; i < ps.moment_samples; ++i) {
    Rng rng = Rng::substream(ctx.cfg.seed ^ 0x3014e27ULL, static_cast<uint64_t>(i));
    GroupSample hs = sample_h(ctx.real, rng, ctx.cfg.scale);
    Cmat z = Cmat::Zero(ctx.real.n(), ctx.real.n());
    for (const auto& b : ctx.real.basis_a_minus_tau) z += (im * rng.gaussian()) * b;
    MomentIdentityResidual res = moment_identity_residual(ctx.real, hs.g, ctx.a, z);
    ps.max_hamiltonian_residual = std::max(ps.max_hamiltonian_residual, res.hamiltonian);
    ps.max_n_membership_residual = std::max(ps.max_n_membership_residual, res.n_membership);
  }
  if (ps.max_hamiltonian_residual > 1e-8 || ps.max_n_membership_residual > 1e-8) ok = false;

  if (!ok) rep.violations.push_back("poisson");
}

void run_escape(const Context& ctx, SampleReport& rep) {
  // a fixed budget: the comparison of two sample maxima needs enough draws
  // to be stable even when the configured run is small
  const int count = 2000;
  auto max_norm = [&](double scale) {
    std::vector<int> failed;
    std::vector<Rvec> phis =
        sample_phi(ctx.real, ctx.a, count, scale, ctx.cfg.seed ^ 0xe5ca9eULL, &failed);
    double m = 0.0;
    for (const auto& v : phis) m = std::max(m, v.norm());
    return m;
  };
  rep.escape.max_norm_base = max_norm(ctx.cfg.scale);
  rep.escape.max_norm_doubled = max_norm(2.0 * ctx.cfg.scale);
  if (ctx.model.cone_gens.empty()) {
    // bounded image: no escape no matter how far the sampler roams; the
    // sample maxima saturate below the vertex radius instead of growing
    double radius = 0.0;
    for (const auto& v : ctx.model.vertices) radius = std::max(radius, v.norm());
    rep.escape.passed = rep.escape.max_norm_base <= radius + ctx.cfg.tol &&
                           rep.escape.max_norm_doubled <= radius + ctx.cfg.tol;
  } else {
    rep.escape.passed = rep.escape.max_norm_doubled > rep.escape.max_norm_base;
  }
  if (!rep.escape.passed) rep.violations.push_back("escape");
}

}  // namespace

SampleReport run_verification(const VerificationConfig& config) {
  config.validate();
  auto t0 = std::chrono::steady_clock::now();

  SymmetricSpaceRealization real =
      build_realization(config.preset, config.n, config.p, config.q);
  if (config.base_point.size() != real.rank_a_minus_tau())
    throw std::invalid_argument("config: base point must have dim a^{-tau} = " +
                                std::to_string(real.rank_a_minus_tau()) + " coordinates");
  RestrictedRootDatum datum = compute_root_datum(real);
  MomentImageModel model = build_model(datum, config.base_point, config.tol);

  SampleReport rep;
  rep.config = config;
  Context ctx{config, real, datum, model, expm(real.a_minus_tau_matrix(config.base_point))};

  if (config.checks.count("membership")) run_membership(ctx, rep);
  if (config.checks.count("vertices")) run_vertices(ctx, rep);
  if (config.checks.count("local_cones")) run_local_cones(ctx, rep);
  if (config.checks.count("oracle_equiv")) run_oracle_equiv(ctx, rep);
  if (config.checks.count("poisson")) run_poisson(ctx, rep);
  if (config.checks.count("escape")) run_escape(ctx, rep);

  auto t1 = std::chrono::steady_clock::now();
  rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

Json SampleReport::to_json(bool include_records, bool include_timing) const {
  Json j;
  j["config"] = config.to_json();
  {
    Json m;
    m["evaluated"] = membership.evaluated;
    m["inside"] = membership.inside;
    m["boundary"] = membership.boundary;
    m["outside"] = membership.outside;
    m["failures"] = membership.failures;
    m["max_violation"] = membership.max_violation;
    m["inside_rate_at_tol"] = membership.inside_rate_at_tol(config.tol);
    j["membership"] = m;
  }
  {
    Json v = Json::array();
    for (const auto& out : vertices) {
      Json e;
      e["weyl_index"] = out.weyl_index;
      e["vertex"] = rvec_to_json(out.vertex);
      e["skipped"] = out.skipped;
      e["error"] = out.error;
      e["t_fixed_residual"] = out.t_fixed_residual;
      v.push_back(e);
    }
    Json vv;
    vv["per_element"] = v;
    vv["all_attained"] = vertices_all_attained;
    vv["max_error"] = max_vertex_error;
    j["vertices"] = vv;
  }
  {
    Json lc;
    lc["tested"] = local_cones.tested;
    lc["violations"] = local_cones.violations;
    lc["max_residual"] = local_cones.max_residual;
    lc["tested_per_vertex"] = local_cones.tested_per_vertex;
    j["local_cones"] = lc;
  }
  {
    Json o;
    o["probes"] = oracle.probes;
    o["band_excluded"] = oracle.band_excluded;
    o["disagreements"] = oracle.disagreements;
    o["max_disagreement_slack"] = oracle.max_disagreement_slack;
    j["oracle_equiv"] = o;
  }
  {
    Json p;
    p["manin_max_h_isotropy"] = poisson.manin.max_h_isotropy;
    p["manin_max_dual_isotropy"] = poisson.manin.max_dual_isotropy;
    p["manin_cross_sigma_min"] = poisson.manin.cross_sigma_min;
    p["leaf_codimension"] = poisson.leaf_codimension;
    p["expected_codimension"] = poisson.expected_codimension;
    p["codimension_constant"] = poisson.codimension_constant;
    p["leaf_points"] = poisson.leaf_points;
    p["moment_samples"] = poisson.moment_samples;
    p["max_hamiltonian_residual"] = poisson.max_hamiltonian_residual;
    p["max_n_membership_residual"] = poisson.max_n_membership_residual;
    j["poisson"] = p;
  }
  {
    Json e;
    e["max_norm_base"] = escape.max_norm_base;
    e["max_norm_doubled"] = escape.max_norm_doubled;
    e["passed"] = escape.passed;
    j["escape"] = e;
  }
  j["violations"] = violations;
  if (include_records) {
    Json recs = Json::array();
    for (const auto& r : records) {
      Json e;
      e["index"] = r.index;
      e["phi"] = rvec_to_json(r.phi);
      e["verdict"] = to_string(r.verdict);
      e["slack"] = r.slack;
      recs.push_back(e);
    }
    j["samples"] = recs;
  }
  if (include_timing) {
    Json t;
    t["wall_ms"] = wall_ms;
    j["timing"] = t;
  }
  return j;
}

SampleReport SampleReport::from_json(const Json& j) {
  SampleReport rep;
  rep.config = VerificationConfig::from_json(j.at("config"));
  {
    const Json& m = j.at("membership");
    rep.membership.evaluated = m.at("evaluated").get<long>();
    rep.membership.inside = m.at("inside").get<long>();
    rep.membership.boundary = m.at("boundary").get<long>();
    rep.membership.outside = m.at("outside").get<long>();
    rep.membership.failures = m.at("failures").get<long>();
    rep.membership.max_violation = m.at("max_violation").get<double>();
  }
  for (const auto& e : j.at("vertices").at("per_element")) {
    VertexCheckOutcome out;
    out.weyl_index = e.at("weyl_index").get<int>();
    out.vertex = rvec_from_json(e.at("vertex"));
    out.skipped = e.at("skipped").get<bool>();
    out.error = e.at("error").get<double>();
    out.t_fixed_residual = e.at("t_fixed_residual").get<double>();
    rep.vertices.push_back(out);
  }
  rep.vertices_all_attained = j.at("vertices").at("all_attained").get<bool>();
  rep.max_vertex_error = j.at("vertices").at("max_error").get<double>();
  {
    const Json& lc = j.at("local_cones");
    rep.local_cones.tested = lc.at("tested").get<long>();
    rep.local_cones.violations = lc.at("violations").get<long>();
    rep.local_cones.max_residual = lc.at("max_residual").get<double>();
    rep.local_cones.tested_per_vertex = lc.at("tested_per_vertex").get<std::vector<long>>();
  }
  {
    const Json& o = j.at("oracle_equiv");
    rep.oracle.probes = o.at("probes").get<long>();
    rep.oracle.band_excluded = o.at("band_excluded").get<long>();
    rep.oracle.disagreements = o.at("disagreements").get<long>();
    rep.oracle.max_disagreement_slack = o.at("max_disagreement_slack").get<double>();
  }
  {
    const Json& p = j.at("poisson");
    rep.poisson.manin.max_h_isotropy = p.at("manin_max_h_isotropy").get<double>();
    rep.poisson.manin.max_dual_isotropy = p.at("manin_max_dual_isotropy").get<double>();
    rep.poisson.manin.cross_sigma_min = p.at("manin_cross_sigma_min").get<double>();
    rep.poisson.leaf_codimension = p.at("leaf_codimension").get<int>();
    rep.poisson.expected_codimension = p.at("expected_codimension").get<int>();
    rep.poisson.codimension_constant = p.at("codimension_constant").get<bool>();
    rep.poisson.leaf_points = p.at("leaf_points").get<int>();
    rep.poisson.moment_samples = p.at("moment_samples").get<int>();
    rep.poisson.max_hamiltonian_residual = p.at("max_hamiltonian_residual").get<double>();
    rep.poisson.max_n_membership_residual = p.at("max_n_membership_residual").get<double>();
  }
  {
    const Json& e = j.at("escape");
    rep.escape.max_norm_base = e.at("max_norm_base").get<double>();
    rep.escape.max_norm_doubled = e.at("max_norm_doubled").get<double>();
    rep.escape.passed = e.at("passed").get<bool>();
  }
  rep.violations = j.at("violations").get<std::vector<std::string>>();
  if (j.contains("samples")) {
    for (const auto& e : j.at("samples")) {
      SampleRecord r;
      r.index = e.at("index").get<int>();
      r.phi = rvec_from_json(e.at("phi"));
      r.verdict = verdict_from_string(e.at("verdict").get<std::string>());
      r.slack = e.at("slack").get<double>();
      rep.records.push_back(std::move(r));
    }
  }
  if (j.contains("timing")) rep.wall_ms = j.at("timing").at("wall_ms").get<double>();
  return rep;
}

void export_report(const SampleReport& report, const std::string& path,
                   const std::string& format) {
  if (format == "json") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export: cannot open " + path);
    out << report.to_json().dump(2) << "\n";
    if (!out) throw std::runtime_error("export: write failed for " + path);
    return;
  }
  if (format != "csv") throw std::invalid_argument("export: unknown format " + format);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("export: cannot open " + path);
  const int r = static_cast<int>(report.config.base_point.size());
  out << "index";
  for (int k = 0; k < r; ++k) out << ",phi_" << k;
  out << ",verdict,slack\n";
  out << std::setprecision(17);
  for (const auto& rec : report.records) {
    out << rec.index;
    for (int k = 0; k < r; ++k) out << "," << rec.phi[k];
    out << "," << to_string(rec.verdict) << "," << rec.slack << "\n";
  }
  if (!out) throw std::runtime_error("export: write failed for " + path);

  // sidecar with the model geometry for plotting
  SymmetricSpaceRealization real = build_realization(report.config.preset, report.config.n,
                                                     report.config.p, report.config.q);
  RestrictedRootDatum datum = compute_root_datum(real);
  MomentImageModel model = build_model(datum, report.config.base_point, report.config.tol);
  Json side;
  Json verts = Json::array();
  for (const auto& v : model.vertices) verts.push_back(rvec_to_json(v));
  Json gens = Json::array();
  for (const auto& g : model.cone_gens) gens.push_back(rvec_to_json(g));
  side["vertices"] = verts;
  side["cone_generators"] = gens;
  std::ofstream sideout(path + ".model.json");
  if (!sideout) throw std::runtime_error("export: cannot open " + path + ".model.json");
  sideout << side.dump(2) << "\n";
}

int exit_code_for(const SampleReport& report) {
  long total = report.membership.evaluated + report.membership.failures;
  if (total > 0 &&
      static_cast<double>(report.membership.failures) > 0.001 * static_cast<double>(total))
    return 3;
  if (!report.violations.empty()) return 2;
  return 0;
}

}  // namespace symspace
