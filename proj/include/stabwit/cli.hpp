// Copyright 2026 The stabwit developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>

#include <CLI11.hpp>

#include "stabwit/io.hpp"
#include "stabwit/nonlocal.hpp"
#include "stabwit/oracle.hpp"

namespace stabwit {

/// Aggregates every config violation found during parsing, so one run
/// reports them all.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& item : v) s += "\n  - " + item;
    return s;
  }
  std::vector<std::string> violations_;
};

struct JobConfig {
  enum class Mode { Build, PLimit, Spectrum, Lms, Verify, Curves, Nonlocal };

  Mode mode = Mode::Build;
  int d = 2;
  int n = 0;
  std::string family;            // ghz | cluster | nd_subspace | gens_opt | five_qubit_code
  std::string graph_file;        // multigraph JSON source
  std::string generators_file;   // generator-set JSON source
  std::string witness_file;      // witness JSON source (verify)
  std::string witness_kind = "colored";  // colored | projector | generator
  std::vector<std::string> curve_families = {"ghz", "cluster"};
  std::vector<int> curve_ds = {2, 3, 5, 7};
  int curve_n_lo = 3;
  int curve_n_hi = 12;
  std::string nonlocal_sub;      // w | wwbar | ghzw
  std::string output_path;       // empty = stdout
  bool json_output = false;      // curves default to CSV; everything else JSON
  long long dense_cap = kDefaultDenseCap;
  int restarts = 20;
  unsigned long long seed = 0;
};

namespace cli_detail {

inline std::vector<int> parse_int_list(const std::string& text, const char* what,
                                       std::vector<std::string>& violations) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      values.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      violations.push_back(std::string(what) + ": '" + tok + "' is not an integer");
    }
  }
  return values;
}

inline std::vector<std::string> parse_str_list(const std::string& text) {
  std::vector<std::string> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) values.push_back(tok);
  return values;
}

// "3..12" or a single "7".
inline std::pair<int, int> parse_range(const std::string& text,
                                       std::vector<std::string>& violations) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    violations.push_back("--n: cannot parse range '" + text + "'");
    return {3, 12};
  }
}

}  // namespace cli_detail

/// Parses command-line arguments into a validated JobConfig. Violations are
/// collected and reported together via ConfigError; CLI11 handles the
/// structural parse (unknown flags, missing subcommand).
inline JobConfig parse_config(const std::vector<std::string>& args) {
  JobConfig cfg;
  if (const char* cap = std::getenv("STABWIT_DENSE_CAP")) {
    cfg.dense_cap = std::atoll(cap);  // --dense-cap still takes precedence
  }
  std::vector<std::string> violations;

  CLI::App app{"stabilizer GME witness toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string n_text, d_text = "2", curve_family_text;
  app.add_option("--d", d_text, "prime local dimension (curves accept a comma list)");
  app.add_option("--n", n_text, "number of qudits (curves accept a range lo..hi)");
  app.add_option("--family", cfg.family,
                 "named family: ghz | cluster | nd_subspace | gens_opt | five_qubit_code");
  app.add_option("--graph", cfg.graph_file, "multigraph JSON file");
  app.add_option("--generators", cfg.generators_file, "generator-set JSON file");
  app.add_option("--witness-file", cfg.witness_file, "witness JSON file (verify only)");
  app.add_option("--witness", cfg.witness_kind, "witness kind: colored | projector | generator");
  app.add_option("--out", cfg.output_path, "output file (default stdout)");
  app.add_option("--dense-cap", cfg.dense_cap, "dense dimension cap (default 4096)");
  app.add_option("--restarts", cfg.restarts, "random restarts for oracle optimizations");
  app.add_option("--seed", cfg.seed, "random seed (echoed in JSON output)");
  app.add_flag("--json", cfg.json_output, "JSON output (curves default to CSV)");

  auto* build = app.add_subcommand("build", "construct a witness and dump it");
  auto* plimit = app.add_subcommand("plimit", "white-noise robustness of a witness");
  auto* spectrum = app.add_subcommand("spectrum", "combinatorial spectrum of a colored witness");
  auto* lms = app.add_subcommand("lms", "commutation matrices, conflict graph, and coloring");
  auto* verify = app.add_subcommand("verify", "run the dense oracle suite on a witness");
  auto* curves = app.add_subcommand("curves", "threshold-vs-N tables for named families");
  curves->add_option("--families", curve_family_text, "comma-separated curve families");
  auto* nonlocal = app.add_subcommand("nonlocal", "non-local stabilizer constructions");
  std::string nonlocal_arg;
  nonlocal->add_option("target", nonlocal_arg, "w | wwbar | ghzw")->required();
  for (auto* sub : {build, plimit, spectrum, lms, verify, curves, nonlocal}) {
    sub->fallthrough();  // global options may follow the subcommand name
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError({std::string("argument error: ") + e.what()});
  }

  if (build->parsed()) cfg.mode = JobConfig::Mode::Build;
  if (plimit->parsed()) cfg.mode = JobConfig::Mode::PLimit;
  if (spectrum->parsed()) cfg.mode = JobConfig::Mode::Spectrum;
  if (lms->parsed()) cfg.mode = JobConfig::Mode::Lms;
  if (verify->parsed()) cfg.mode = JobConfig::Mode::Verify;
  if (curves->parsed()) cfg.mode = JobConfig::Mode::Curves;
  if (nonlocal->parsed()) cfg.mode = JobConfig::Mode::Nonlocal;

  const bool is_curves = cfg.mode == JobConfig::Mode::Curves;
  if (!n_text.empty()) {
    auto [lo, hi] = cli_detail::parse_range(n_text, violations);
    cfg.curve_n_lo = lo;
    cfg.curve_n_hi = hi;
    cfg.n = lo;
    if (!is_curves && lo != hi) violations.push_back("--n: a single value is required here");
  }
  if (curves->parsed()) {
    if (!curve_family_text.empty()) {
      cfg.curve_families = cli_detail::parse_str_list(curve_family_text);
    } else if (!cfg.family.empty()) {
      cfg.curve_families = cli_detail::parse_str_list(cfg.family);
    }
    cfg.curve_ds = cli_detail::parse_int_list(d_text, "--d", violations);
  } else {
    const auto ds = cli_detail::parse_int_list(d_text, "--d", violations);
    if (ds.size() != 1) {
      violations.push_back("--d: a single value is required here");
    } else {
      cfg.d = ds[0];
    }
  }

  // Cross-field validation; collect everything before failing.
  if (!is_curves && !is_prime(cfg.d)) {
    violations.push_back("--d: " + std::to_string(cfg.d) + " is not prime; d must be prime");
  }
  if (cfg.d >= 1000000) violations.push_back("--d: must be below 10^6");
  if (cfg.mode == JobConfig::Mode::Nonlocal) {
    cfg.nonlocal_sub = nonlocal_arg;
    if (nonlocal_arg != "w" && nonlocal_arg != "wwbar" && nonlocal_arg != "ghzw") {
      violations.push_back("nonlocal: unknown target '" + nonlocal_arg + "'");
    }
    if (nonlocal_arg == "w" && (cfg.n < 3)) {
      violations.push_back("nonlocal w: --n must be at least 3");
    }
  } else if (is_curves) {
    for (const auto& fam : cfg.curve_families) {
      if (fam != "ghz" && fam != "cluster" && fam != "gens_opt") {
        violations.push_back("curves: unknown family '" + fam + "'");
      }
    }
    for (int d : cfg.curve_ds) {
      if (!is_prime(d)) violations.push_back("curves: d=" + std::to_string(d) + " is not prime");
    }
    if (cfg.curve_n_lo < 2 || cfg.curve_n_hi < cfg.curve_n_lo) {
      violations.push_back("curves: bad N range");
    }
  } else {
    const bool verify_mode = cfg.mode == JobConfig::Mode::Verify;
    if (!cfg.witness_file.empty() && !verify_mode) {
      violations.push_back("--witness-file: only the verify command accepts a witness dump");
    }
    const int sources = (!cfg.family.empty()) + (!cfg.graph_file.empty()) +
                        (!cfg.generators_file.empty()) +
                        (verify_mode && !cfg.witness_file.empty());
    if (sources != 1) {
      violations.push_back(verify_mode
                               ? "exactly one of --family, --graph, --generators, "
                                 "--witness-file is required"
                               : "exactly one of --family, --graph, --generators is required");
    }
    if (!cfg.family.empty()) {
      const bool known = cfg.family == "ghz" || cfg.family == "cluster" ||
                         cfg.family == "nd_subspace" || cfg.family == "gens_opt" ||
                         cfg.family == "five_qubit_code";
      if (!known) violations.push_back("--family: unknown family '" + cfg.family + "'");
      const bool needs_n = cfg.family == "ghz" || cfg.family == "cluster" ||
                           cfg.family == "gens_opt";
      if (needs_n && cfg.n < 2) violations.push_back("--family " + cfg.family +
                                                     ": --n >= 2 is required");
      if (cfg.family == "five_qubit_code" && cfg.d != 2) {
        violations.push_back("--family five_qubit_code: defined for d = 2");
      }
    }
    if (cfg.witness_kind != "colored" && cfg.witness_kind != "projector" &&
        cfg.witness_kind != "generator") {
      violations.push_back("--witness: unknown kind '" + cfg.witness_kind + "'");
    }
  }
  if (cfg.restarts < 1) violations.push_back("--restarts: must be positive");
  if (cfg.dense_cap < 2) violations.push_back("--dense-cap: must be at least 2");

  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

inline JobConfig parse_config(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_config(args);
}

namespace cli_detail {

struct ResolvedSource {
  GeneratorSet gens;
  std::string family;  // empty unless a named family
};

inline ResolvedSource resolve_source(const JobConfig& cfg) {
  if (!cfg.family.empty()) {
    if (cfg.family == "ghz") return {ghz_generators(cfg.n, cfg.d), "ghz"};
    if (cfg.family == "cluster") return {cluster_generators(cfg.n, cfg.d), "cluster"};
    if (cfg.family == "nd_subspace") return {nd_subspace_generators(cfg.d), "nd_subspace"};
    if (cfg.family == "gens_opt") return {opt_subspace_generators(cfg.n, cfg.d), "gens_opt"};
    if (cfg.family == "five_qubit_code") return {five_qubit_code_generators(), "five_qubit_code"};
    throw std::invalid_argument("unknown family: " + cfg.family);
  }
  if (!cfg.graph_file.empty()) {
    const Multigraph g = multigraph_from_json(read_json_file(cfg.graph_file));
    return {graph_generators(g, cfg.d), ""};
  }
  return {generator_set_from_json(read_json_file(cfg.generators_file)), ""};
}

inline Witness build_witness(const JobConfig& cfg, const GeneratorSet& gens,
                             const Coloring& coloring) {
  if (cfg.witness_kind == "projector") return projector_witness(gens);
  if (cfg.witness_kind == "generator") return generator_witness(gens);
  return colored_witness(gens, coloring);
}

inline std::string closed_form_tag(const std::string& family, const std::string& kind,
                                   int d, int n, const Coloring& coloring, int k) {
  if (kind == "projector") return "projector";
  if (kind == "generator") return d == 2 ? "generator_qubit" : "";
  if (family == "ghz") return "ghz";
  if (family == "cluster") return n % 2 == 0 ? "cluster_even" : "cluster_odd";
  if (family == "gens_opt") return "gens_opt";
  if (family == "nd_subspace") return "nd_subspace";
  (void)coloring;
  (void)k;
  return "colored_general";
}

inline double closed_form_value(const std::string& tag, int d, int n,
                                const std::vector<int>& class_sizes, int k) {
  if (tag == "projector") return p_limit_projector(d, k);
  if (tag == "generator_qubit") return p_limit_generator_qubit(n);
  if (tag == "ghz") return p_limit_ghz(d, n);
  if (tag == "cluster_even" || tag == "cluster_odd") return p_limit_cluster(d, n);
  if (tag == "gens_opt") return p_limit_gens_opt(d, n);
  if (tag == "nd_subspace") return p_limit_nd_subspace();
  if (tag == "colored_general") return p_limit_colored_general(d, class_sizes);
  throw std::invalid_argument("unknown closed form tag: " + tag);
}

inline void write_output(const JobConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw std::runtime_error("cannot write output file: " + cfg.output_path);
  file << text;
}

inline Json output_header(const JobConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  return j;
}

inline int run_lms(const JobConfig& cfg, std::ostream& out) {
  const ResolvedSource src = resolve_source(cfg);
  const auto [profile, coloring] = lms_count(src.gens);
  Json j = output_header(cfg);
  j["d"] = src.gens.d;
  j["n"] = src.gens.n_sites;
  j["generators"] = generator_set_to_json(src.gens)["generators"];
  Json per_site = Json::array();
  for (const auto& c : profile.per_site) per_site.push_back(matrix_to_json(c));
  j["per_site_commutation"] = per_site;
  j["total_commutation"] = matrix_to_json(profile.total);
  j["conflict"] = matrix_to_json(profile.conflict);
  j["num_settings"] = coloring.num_colors;
  Json classes = Json::array();
  for (const auto& cls : coloring.classes) {
    Json members = Json::array();
    for (int v : cls) members.push_back(v + 1);
    classes.push_back(members);
  }
  j["color_classes"] = classes;
  write_output(cfg, j.dump(2) + "\n", out);
  return 0;
}

inline int run_build_or_plimit(const JobConfig& cfg, std::ostream& out) {
  const ResolvedSource src = resolve_source(cfg);
  const auto [profile, coloring] = lms_count(src.gens);
  const Witness w = build_witness(cfg, src.gens, coloring);
  Json j = output_header(cfg);
  j["witness"] = witness_to_json(w);
  RobustnessReport report = p_limit_generic(w);
  const std::string tag = closed_form_tag(src.family, cfg.witness_kind, w.d, w.n_sites,
                                          coloring, w.num_generators);
  if (!tag.empty()) {
    const double closed = closed_form_value(tag, w.d, w.n_sites, w.class_sizes(),
                                            w.num_generators);
    report.closed_form_used = tag;
    j["closed_form_p_limit"] = round12(closed);
  }
  j["robustness"] = robustness_to_json(report);
  write_output(cfg, j.dump(2) + "\n", out);
  return (report.detects || cfg.mode == JobConfig::Mode::Build) ? 0 : 2;
}

inline int run_spectrum(const JobConfig& cfg, std::ostream& out) {
  const ResolvedSource src = resolve_source(cfg);
  const auto [profile, coloring] = lms_count(src.gens);
  const Witness w = colored_witness(src.gens, coloring);
  Json j = output_header(cfg);
  j["witness"] = witness_to_json(w);
  j["spectrum"] = spectrum_to_json(witness_spectrum(w));
  // Spectrum of W - d * ((1/d) I - P): its minimum certifies the dominance
  // inequality behind the construction.
  j["spectrum_minus_d_projector_witness"] =
      spectrum_to_json(witness_spectrum(w, static_cast<double>(w.d)));
  write_output(cfg, j.dump(2) + "\n", out);
  return 0;
}

inline int run_curves(const JobConfig& cfg, std::ostream& out) {
  std::vector<CurveRow> rows;
  for (const auto& family : cfg.curve_families) {
    for (int d : cfg.curve_ds) {
      auto batch = emit_curves(family, d, cfg.curve_n_lo, cfg.curve_n_hi);
      rows.insert(rows.end(), batch.begin(), batch.end());
    }
  }
  if (cfg.json_output) {
    Json j = output_header(cfg);
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"family", r.family},
                     {"d", r.d},
                     {"N", r.n},
                     {"K", r.num_settings},
                     {"p_limit", round12(r.p_limit)}});
    }
    j["rows"] = arr;
    write_output(cfg, j.dump(2) + "\n", out);
  } else {
    write_output(cfg, curves_to_csv(rows), out);
  }
  return 0;
}

inline int run_verify(const JobConfig& cfg, std::ostream& out) {
  Witness w;
  if (!cfg.witness_file.empty()) {
    w = witness_from_json(read_json_file(cfg.witness_file));
    if (w.kind == WitnessKind::Custom) {
      throw std::invalid_argument("verify: custom witness dumps are not supported");
    }
  } else {
    const ResolvedSource src = resolve_source(cfg);
    const auto [profile, coloring] = lms_count(src.gens);
    w = build_witness(cfg, src.gens, coloring);
  }
  const GeneratorSet gens(w.d, w.n_sites, w.generators);
  Json j = output_header(cfg);
  j["witness"] = witness_to_json(w);
  bool all_pass = true;
  Json checks = Json::array();
  auto record = [&](const std::string& name, bool pass, double value) {
    checks.push_back({{"check", name}, {"pass", pass}, {"value", round12(value)}});
    all_pass = all_pass && pass;
  };

  const DenseMatrix dense = oracle::dense_witness(w, cfg.dense_cap);
  const double herm_dev = (dense - dense.adjoint()).cwiseAbs().maxCoeff();
  record("hermitian_deviation", herm_dev <= 1e-12, herm_dev);

  // Stabilization of the subspace by every generator.
  const StabilizerGroup group(gens);
  const DenseMatrix p = projector(group, cfg.dense_cap);
  double worst_stab = 0.0;
  for (const auto& g : group.generators()) {
    worst_stab = std::max(worst_stab,
                          (apply_word_left(g, p, cfg.dense_cap) - p).cwiseAbs().maxCoeff());
  }
  record("stabilization_residual", worst_stab <= 1e-10, worst_stab);

  if (w.kind == WitnessKind::Colored) {
    // Dense spectrum must match the combinatorial one as a multiset.
    const Eigen::VectorXd dense_eigs = oracle::hermitian_spectrum(dense);
    const auto combinatorial = witness_spectrum(w);
    double worst_gap = 0.0;
    Eigen::Index idx = 0;
    for (const auto& [eig, mult] : combinatorial) {
      for (long long c = 0; c < mult; ++c) {
        worst_gap = std::max(worst_gap, std::abs(dense_eigs(idx++) - eig));
      }
    }
    record("spectrum_multiset_gap", idx == dense_eigs.size() && worst_gap <= 1e-9, worst_gap);

    // Positivity certificate: colored witness dominates d * projector witness.
    const Witness proj = projector_witness(gens);
    const DenseMatrix diff =
        dense - static_cast<double>(w.d) * oracle::dense_witness(proj, cfg.dense_cap);
    const double min_eig = oracle::min_eigenvalue(diff);
    record("psd_vs_projector_witness", min_eig >= -1e-10, min_eig);
  }

  RobustnessReport report = p_limit_generic(w);
  const double reproduced =
      -report.expectation / (report.normalized_trace - report.expectation);
  record("threshold_identity", std::abs(reproduced - report.p_limit) <= 1e-12 ||
                                   !report.detects,
         reproduced);
  j["robustness"] = robustness_to_json(report);

  if (w.n_sites <= 4) {
    const double min_prod = oracle::min_product_expectation_all(
        dense, w.d, w.n_sites, cfg.restarts, cfg.seed);
    record("min_product_expectation", min_prod >= -1e-8, min_prod);
  }

  j["checks"] = checks;
  j["pass"] = all_pass;
  write_output(cfg, j.dump(2) + "\n", out);
  return all_pass ? 0 : 1;
}

inline int run_nonlocal(const JobConfig& cfg, std::ostream& out) {
  Json j = output_header(cfg);
  if (cfg.nonlocal_sub == "w") {
    const auto stabilizers = w_nonlocal_stabilizer(cfg.n, cfg.dense_cap);
    Json stabs = Json::array();
    for (const auto& s : stabilizers) {
      Json terms = Json::array();
      for (const auto& t : s.terms) {
        terms.push_back({{"weight_re", round12(t.weight.real())},
                         {"weight_im", round12(t.weight.imag())},
                         {"word", to_text(t.word)}});
      }
      stabs.push_back(terms);
    }
    j["stabilizers"] = stabs;
    if (cfg.n <= 6) {
      Json dense = Json::array();
      for (const auto& s : stabilizers) dense.push_back(dense_to_json(to_dense(s, cfg.dense_cap)));
      j["stabilizers_dense"] = dense;
    }
    if (cfg.n % 2 == 1) {  // the witness construction covers odd N only
      const NonlocalWitness nw = w_witness(cfg.n, cfg.dense_cap);
      j["witness"] = witness_to_json(nw.witness);
      j["robustness"] = robustness_to_json(nw.robustness);
    }
  } else if (cfg.nonlocal_sub == "wwbar") {
    const WWbarWitnesses ww = wwbar_witnesses(cfg.dense_cap);
    j["projector_constant"] = round12(ww.projector_constant);
    j["projector_robustness"] = robustness_to_json(ww.projector_robustness);
    j["reported_projector_p_limit"] = round12(ww.reported_projector_p_limit);
    j["projector_p_limit_matches_reported"] = ww.projector_p_limit_matches_reported;
    j["stabilizer_witness"] = witness_to_json(ww.stabilizer.witness);
    j["stabilizer_robustness"] = robustness_to_json(ww.stabilizer.robustness);
  } else {
    const GhzwFixture f = ghzw_fixture();
    j["u"] = dense_to_json(f.u);
    j["s1"] = dense_to_json(f.s1);
    j["s2"] = dense_to_json(f.s2);
    j["projector_constant"] = round12(f.projector_constant);
    j["stabilizer_constant"] = round12(f.stabilizer_constant);
    j["projector_robustness"] = robustness_to_json(f.projector_robustness);
    j["stabilizer_robustness"] = robustness_to_json(f.stabilizer_robustness);
  }
  write_output(cfg, j.dump(2) + "\n", out);
  return 0;
}

}  // namespace cli_detail

/// Executes a parsed job. Exit codes: 0 success, 2 witness does not detect
/// its target, 1 any other error (message on `err`).
inline int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.mode) {
      case JobConfig::Mode::Build:
      case JobConfig::Mode::PLimit:
        return cli_detail::run_build_or_plimit(cfg, out);
      case JobConfig::Mode::Spectrum:
        return cli_detail::run_spectrum(cfg, out);
      case JobConfig::Mode::Lms:
        return cli_detail::run_lms(cfg, out);
      case JobConfig::Mode::Verify:
        return cli_detail::run_verify(cfg, out);
      case JobConfig::Mode::Curves:
        return cli_detail::run_curves(cfg, out);
      case JobConfig::Mode::Nonlocal:
        return cli_detail::run_nonlocal(cfg, out);
    }
    err << "unknown mode\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stabwit
