// verify: structure computations and convexity verification for the matrix
// symmetric-space presets, with JSON/CSV reporting.

#include "symspace/verifier.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of the moment-map image of H-orbits in SL(n,C)/SU(n)"};
  app.set_config("--config", "", "flat key=value configuration file; flags override");

  std::string preset = "compact";
  int n = 3, p = 0, q = 0;
  std::vector<double> base_point = {2.0, 1.0};
  int samples = 10000;
  double scale = 0.7;
  uint64_t seed = 42;
  double tol = 1e-8;
  double window = 0.0;
  std::vector<std::string> checks = {"membership", "vertices",  "local_cones",
                                     "oracle_equiv", "poisson", "escape"};
  std::string out_path;
  std::string format = "json";
  std::string dump_structure;

  app.add_option("--preset", preset, "compact | split | supq")->capture_default_str();
  app.add_option("--n", n, "matrix size")->capture_default_str();
  app.add_option("--p", p, "supq block size p");
  app.add_option("--q", q, "supq block size q");
  app.add_option("--base-point", base_point, "a^{-tau} coordinates c1,c2,...")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
  app.add_option("--scale", scale, "sampling standard deviation")->capture_default_str();
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", tol, "membership tolerance")->capture_default_str();
  app.add_option("--window", window, "probe window radius (default 2|X|)");
  app.add_option("--checks", checks, "comma list of checks to run")->delimiter(',');
  app.add_option("--out", out_path, "report output path");
  app.add_option("--format", format, "json | csv")->capture_default_str();
  app.add_option("--dump-structure", dump_structure,
                 "write the root datum and model geometry to this path and exit");

  CLI11_PARSE(app, argc, argv);

  symspace::VerificationConfig cfg;
  try {
    cfg.preset = symspace::preset_from_string(preset);
    cfg.n = n;
    cfg.p = p;
    cfg.q = q;
    cfg.base_point.resize(static_cast<int>(base_point.size()));
    for (size_t i = 0; i < base_point.size(); ++i)
      cfg.base_point[static_cast<int>(i)] = base_point[i];
    cfg.samples = samples;
    cfg.scale = scale;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.window = window;
    cfg.format = format;
    cfg.out_path = out_path;
    cfg.checks = std::set<std::string>(checks.begin(), checks.end());
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!dump_structure.empty()) {
      auto real = symspace::build_realization(cfg.preset, cfg.n, cfg.p, cfg.q);
      auto datum = symspace::compute_root_datum(real);
      auto model = symspace::build_model(datum, cfg.base_point, cfg.tol);

      symspace::Json j;
      j["preset"] = symspace::to_string(cfg.preset);
      j["n"] = cfg.n;
      j["dim_g"] = real.dim_g();
      j["dim_h"] = real.basis_h.size();
      j["rank_a_minus_tau"] = real.rank_a_minus_tau();
      j["dim_a_tau"] = real.basis_a_tau.size();
      symspace::Json roots = symspace::Json::array();
      for (const auto& root : datum.roots) {
        symspace::Json e;
        symspace::Json beta = symspace::Json::array(), hb = symspace::Json::array();
        for (int k = 0; k < root.beta.size(); ++k) beta.push_back(root.beta[k]);
        for (int k = 0; k < root.h_beta.size(); ++k) hb.push_back(root.h_beta[k]);
        e["beta"] = beta;
        e["h_beta"] = hb;
        e["mult_plus"] = root.mult_plus;
        e["mult_minus"] = root.mult_minus;
        e["positive"] = root.is_positive;
        roots.push_back(e);
      }
      j["roots"] = roots;
      j["weyl_order"] = datum.weyl.size();
      symspace::Json weyl = symspace::Json::array();
      for (const auto& w : datum.weyl) {
        symspace::Json e;
        symspace::Json rows = symspace::Json::array();
        for (int i = 0; i < w.action.rows(); ++i) {
          symspace::Json row = symspace::Json::array();
          for (int k = 0; k < w.action.cols(); ++k) row.push_back(w.action(i, k));
          rows.push_back(row);
        }
        e["action"] = rows;
        e["has_representative"] = w.representative.has_value();
        e["rep_error"] = w.rep_error;
        weyl.push_back(e);
      }
      j["weyl"] = weyl;
      symspace::Json verts = symspace::Json::array();
      for (const auto& v : model.vertices) {
        symspace::Json row = symspace::Json::array();
        for (int k = 0; k < v.size(); ++k) row.push_back(v[k]);
        verts.push_back(row);
      }
      symspace::Json gens = symspace::Json::array();
      for (const auto& g : model.cone_gens) {
        symspace::Json row = symspace::Json::array();
        for (int k = 0; k < g.size(); ++k) row.push_back(g[k]);
        gens.push_back(row);
      }
      j["model_vertices"] = verts;
      j["model_cone_generators"] = gens;

      std::ofstream out(dump_structure);
      if (!out) {
        std::cerr << "error: cannot open " << dump_structure << "\n";
        return 1;
      }
      out << j.dump(2) << "\n";
      return 0;
    }

    symspace::SampleReport report = symspace::run_verification(cfg);
    if (!cfg.out_path.empty()) {
      symspace::export_report(report, cfg.out_path, cfg.format);
    } else {
      std::cout << report.to_json(/*include_records=*/false).dump(2) << "\n";
    }
    int code = symspace::exit_code_for(report);
    if (code != 0) {
      std::cerr << "checks failed:";
      for (const auto& v : report.violations) std::cerr << " " << v;
      std::cerr << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
