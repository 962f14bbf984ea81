#pragma once

#include "symspace/convex.hpp"
#include "symspace/poisson.hpp"
#include "symspace/sampling.hpp"

#include <json.hpp>

#include <set>
#include <string>

namespace symspace {

using Json = nlohmann::ordered_json;

const std::set<std::string>& all_check_names();

struct VerificationConfig {
  Preset preset = Preset::Compact;
  int n = 3, p = 0, q = 0;
  Rvec base_point = (Rvec(2) << 2.0, 1.0).finished();
  int samples = 10000;
  double scale = 0.7;
  uint64_t seed = 42;
  double tol = 1e-8;
  double window = 0.0;  // 0: use 2 |X|
  std::set<std::string> checks = all_check_names();
  std::string out_path;
  std::string format = "json";

  double effective_window() const;
  void validate() const;
  Json to_json() const;
  static VerificationConfig from_json(const Json& j);
};

struct SampleRecord {
  int index = 0;
  Rvec phi;
  Verdict verdict = Verdict::Indeterminate;
  double slack = 0.0;
};

/// Counts and maxima over membership-classified samples. Merging two
/// aggregates is associative and commutative.
struct MembershipStats {
  long evaluated = 0;
  long inside = 0, boundary = 0, outside = 0;
  long failures = 0;  // Iwasawa / LP breakdowns, excluded from the counts
  double max_violation = 0.0;  // largest positive slack seen

  void add(const SampleRecord& rec);
  static MembershipStats merge(const MembershipStats& a, const MembershipStats& b);
  double inside_rate_at_tol(double tol) const;
};

struct VertexCheckOutcome {
  int weyl_index = 0;
  Rvec vertex;
  bool skipped = false;
  double error = 0.0;
  double t_fixed_residual = 0.0;
};

struct LocalConeStats {
  long tested = 0;
  long violations = 0;
  double max_residual = 0.0;
  std::vector<long> tested_per_vertex;
};

struct OracleStats {
  long probes = 0;
  long band_excluded = 0;
  long disagreements = 0;
  double max_disagreement_slack = 0.0;
};

struct PoissonStats {
  ManinReport manin;
  int leaf_codimension = -1;
  int expected_codimension = -1;
  bool codimension_constant = true;
  int leaf_points = 0;
  double max_hamiltonian_residual = 0.0;
  double max_n_membership_residual = 0.0;
  int moment_samples = 0;
};

struct EscapeStats {
  double max_norm_base = 0.0;
  double max_norm_doubled = 0.0;
  bool passed = false;
};

struct SampleReport {
  VerificationConfig config;
  MembershipStats membership;
  std::vector<VertexCheckOutcome> vertices;
  bool vertices_all_attained = false;
  double max_vertex_error = 0.0;
  LocalConeStats local_cones;
  OracleStats oracle;
  PoissonStats poisson;
  EscapeStats escape;
  std::vector<SampleRecord> records;
  std::vector<std::string> violations;  // names of failed checks
  double wall_ms = 0.0;

  Json to_json(bool include_records = true, bool include_timing = true) const;
  static SampleReport from_json(const Json& j);
};

/// Deterministic Phi sampling: value i is phi(h_i a) with h_i drawn from the
/// (seed, i) substream. Failed factorizations are reported by index.
std::vector<Rvec> sample_phi(const SymmetricSpaceRealization& real, const Cmat& a, int count,
                             double scale, uint64_t seed, std::vector<int>* failed = nullptr);

/// Covering-radius heuristic for the surjectivity direction in rank 2: the
/// largest distance from a grid point of (model intersect window box) to its
/// nearest sampled Phi value. Sampling is stratified over scales and seeded
/// near each Weyl vertex so the thin corner regions are reached.
struct CoverageReport {
  long grid_points = 0;
  long samples_used = 0;
  double covering_radius = 0.0;
  Rvec worst_point;
};
CoverageReport coverage_statistic(const SymmetricSpaceRealization& real,
                                  const RestrictedRootDatum& datum,
                                  const MomentImageModel& model, int total_samples,
                                  double window, double spacing, double scale, uint64_t seed);

SampleReport run_verification(const VerificationConfig& config);

/// json: the full report. csv: one row per sample plus a .model.json sidecar
/// holding the vertices and cone generators.
void export_report(const SampleReport& report, const std::string& path,
                   const std::string& format);

/// Process exit code: 0 clean, 2 violations, 3 when numerical failures
/// exceed 0.1% of the samples.
int exit_code_for(const SampleReport& report);

}  // namespace symspace
