#include "symspace/verifier.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace symspace;

namespace {

VerificationConfig small_config() {
  VerificationConfig cfg;
  cfg.preset = Preset::Compact;
  cfg.n = 2;
  cfg.base_point = Rvec::Constant(1, 1.0);
  cfg.samples = 300;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("sample_phi determinism and the forced-identity case") {
  auto r = build_realization(Preset::Compact, 2);
  Rvec x = Rvec::Constant(1, 1.0);
  Cmat a = expm(r.a_minus_tau_matrix(x));

  // scale 0 freezes h at the identity, so phi = X
  auto vals = sample_phi(r, a, 1, 0.0, 99);
  REQUIRE(vals.size() == 1);
  CHECK((vals[0] - x).norm() < 1e-12);

  auto v1 = sample_phi(r, a, 50, 0.7, 1234);
  auto v2 = sample_phi(r, a, 50, 0.7, 1234);
  REQUIRE(v1.size() == v2.size());
  for (size_t i = 0; i < v1.size(); ++i) CHECK((v1[i] - v2[i]).norm() == 0.0);

  // Kostant A1 window: every value stays in [-1, 1]
  auto many = sample_phi(r, a, 500, 0.7, 5);
  for (const auto& v : many) CHECK(std::abs(v[0]) <= 1.0 + 1e-8);
}

TEST_CASE("split n=2 samples stay on the ray") {
  auto r = build_realization(Preset::Split, 2);
  Rvec x = Rvec::Constant(1, 0.6);
  Cmat a = expm(r.a_minus_tau_matrix(x));
  auto vals = sample_phi(r, a, 500, 0.7, 21);
  // H_beta = +1/2 in coordinates: the image is {x - t/2 : t >= 0}
  for (const auto& v : vals) CHECK(v[0] <= x[0] + 1e-8);
}

TEST_CASE("one frozen sample at scale zero is trivially inside") {
  VerificationConfig cfg = small_config();
  cfg.samples = 1;
  cfg.scale = 0.0;
  cfg.checks = {"membership"};
  SampleReport rep = run_verification(cfg);
  CHECK(rep.membership.evaluated == 1);
  CHECK(rep.membership.outside == 0);
  CHECK(rep.membership.inside_rate_at_tol(cfg.tol) == 1.0);
}

TEST_CASE("run_verification on a small Kostant case") {
  VerificationConfig cfg = small_config();
  SampleReport rep = run_verification(cfg);
  CHECK(rep.membership.evaluated == cfg.samples);
  CHECK(rep.membership.inside + rep.membership.boundary + rep.membership.outside ==
        rep.membership.evaluated);
  CHECK(rep.membership.inside_rate_at_tol(cfg.tol) == 1.0);
  CHECK(rep.vertices_all_attained);
  CHECK(rep.max_vertex_error < 1e-8);
  CHECK(rep.oracle.disagreements == 0);
  CHECK(rep.poisson.leaf_codimension == 0);
  CHECK(rep.escape.passed);
  CHECK(rep.violations.empty());
  CHECK(exit_code_for(rep) == 0);
}

TEST_CASE("determinism: identical configs give identical reports") {
  VerificationConfig cfg = small_config();
  cfg.samples = 120;
  SampleReport r1 = run_verification(cfg);
  SampleReport r2 = run_verification(cfg);
  CHECK(r1.to_json(true, false).dump() == r2.to_json(true, false).dump());
}

TEST_CASE("merge of disjoint-seed aggregates matches the combined aggregate") {
  auto r = build_realization(Preset::Compact, 2);
  auto d = compute_root_datum(r);
  Rvec x = Rvec::Constant(1, 1.0);
  auto model = build_model(d, x);
  Cmat a = expm(r.a_minus_tau_matrix(x));

  auto classify = [&](uint64_t seed, int count) {
    MembershipStats stats;
    std::vector<SampleRecord> recs;
    auto vals = sample_phi(r, a, count, 0.7, seed);
    for (size_t i = 0; i < vals.size(); ++i) {
      auto m = membership_minkowski(vals[i], model);
      SampleRecord rec{static_cast<int>(i), vals[i], m.verdict, m.slack};
      stats.add(rec);
      recs.push_back(rec);
    }
    return std::pair{stats, recs};
  };

  auto [s1, rec1] = classify(100, 150);
  auto [s2, rec2] = classify(200, 170);
  MembershipStats merged = MembershipStats::merge(s1, s2);

  MembershipStats combined;
  for (const auto& rec : rec1) combined.add(rec);
  for (const auto& rec : rec2) combined.add(rec);

  CHECK(merged.evaluated == combined.evaluated);
  CHECK(merged.inside == combined.inside);
  CHECK(merged.boundary == combined.boundary);
  CHECK(merged.outside == combined.outside);
  CHECK(merged.failures == combined.failures);
  CHECK(merged.max_violation == combined.max_violation);
  // and merge is symmetric
  MembershipStats flipped = MembershipStats::merge(s2, s1);
  CHECK(flipped.evaluated == merged.evaluated);
  CHECK(flipped.max_violation == merged.max_violation);
}

TEST_CASE("json export round-trip and csv shape") {
  VerificationConfig cfg = small_config();
  cfg.samples = 40;
  SampleReport rep = run_verification(cfg);

  SUBCASE("json round-trip") {
    Json j = rep.to_json();
    SampleReport back = SampleReport::from_json(j);
    CHECK(back.to_json().dump() == j.dump());
  }

  SUBCASE("csv row count and sidecar") {
    std::string path = "test_report.csv";
    export_report(rep, path, "csv");
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int rows = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
      if (!saw_header) {
        CHECK(line.rfind("index,phi_0", 0) == 0);
        saw_header = true;
        continue;
      }
      ++rows;
    }
    CHECK(rows == static_cast<int>(rep.records.size()));
    std::ifstream side(path + ".model.json");
    REQUIRE(side.good());
    Json model_json = Json::parse(side);
    CHECK(model_json.at("vertices").size() == 2);
    std::remove(path.c_str());
    std::remove((path + ".model.json").c_str());
  }

  SUBCASE("empty record list still writes a header") {
    SampleReport empty;
    empty.config = cfg;
    std::string path = "test_empty.csv";
    export_report(empty, path, "csv");
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.rfind("index,", 0) == 0);
    std::string extra;
    CHECK_FALSE(std::getline(in, extra));
    std::remove(path.c_str());
    std::remove((path + ".model.json").c_str());
  }
}

TEST_CASE("config validation") {
  VerificationConfig cfg = small_config();
  cfg.samples = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.checks = {"bogus"};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.base_point = Rvec::Constant(2, 1.0);  // wrong rank
  CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);
}

TEST_CASE("larger models: compact n=4 and supq(4,2,2)") {
  VerificationConfig cfg;
  cfg.preset = Preset::Compact;
  cfg.n = 4;
  cfg.base_point = (Rvec(3) << 3.0, 2.0, 1.0).finished();
  cfg.samples = 500;
  cfg.seed = 12;
  cfg.checks = {"membership", "vertices", "oracle_equiv"};
  SampleReport rep = run_verification(cfg);
  CHECK(rep.vertices.size() == 24);  // full S4 orbit
  CHECK(rep.membership.inside_rate_at_tol(cfg.tol) == 1.0);
  CHECK(rep.max_vertex_error < 1e-8);
  CHECK(rep.oracle.disagreements == 0);

  cfg.preset = Preset::SUpq;
  cfg.p = 2;
  cfg.q = 2;
  cfg.base_point = (Rvec(3) << 1.2, 0.5, 0.3).finished();
  SampleReport rep2 = run_verification(cfg);
  CHECK(rep2.vertices.size() == 4);  // S2 x S2
  CHECK(rep2.membership.inside_rate_at_tol(cfg.tol) == 1.0);
  CHECK(rep2.max_vertex_error < 1e-8);
  CHECK(rep2.oracle.disagreements == 0);
  CHECK(rep2.violations.empty());
}

TEST_CASE("supq run exercises the cone part") {
  VerificationConfig cfg;
  cfg.preset = Preset::SUpq;
  cfg.n = 3;
  cfg.p = 2;
  cfg.q = 1;
  cfg.base_point = (Rvec(2) << 1.1, 0.4).finished();
  cfg.samples = 400;
  cfg.seed = 3;
  cfg.checks = {"membership", "vertices"};
  SampleReport rep = run_verification(cfg);
  CHECK(rep.membership.inside_rate_at_tol(cfg.tol) == 1.0);
  CHECK(rep.vertices_all_attained);

  // hull-only membership must fail for at least one sample: the cone matters
  auto r = build_realization(cfg.preset, cfg.n, cfg.p, cfg.q);
  auto d = compute_root_datum(r);
  MomentImageModel hull_only = build_model(d, cfg.base_point);
  hull_only.cone_gens.clear();
  int outside_hull = 0;
  for (const auto& rec : rep.records) {
    auto m = membership_minkowski(rec.phi, hull_only);
    if (m.verdict == Verdict::Outside && m.slack > cfg.tol) ++outside_hull;
  }
  CHECK(outside_hull > 0);
}
