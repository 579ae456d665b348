// Batch CLI for Wick-stochastic Wiener filtering.
//
// Subcommands operate on JSON files (schema_version 1) and emit JSON or CSV.
// Human-readable progress goes to stderr; stdout carries only payloads, so
// output can be piped. Exit code 0 iff every computed residual met its
// tolerance (and 1 on any error), so the tool can gate batch jobs.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wns/serialize.hpp"

using namespace wns;

namespace {

struct GlobalOpts {
  std::string scenario_path;
  std::string builtin;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 1;
  bool quiet = false;
  bool timing = false;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out.good()) throw std::runtime_error("failed while writing '" + path + "'");
}

void note(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::cerr << line << "\n";
}

// Primary payload: --out file if given, else stdout.
void emit(const GlobalOpts& g, const std::string& text) {
  if (!g.out_path.empty()) {
    write_file(g.out_path, text);
    note(g, "wrote " + g.out_path);
  } else if (!g.quiet) {
    std::cout << text;
  }
}

// Secondary table for multi-file CSV output: suffix inserted before the
// extension of --out, or a marked block on stdout.
void emit_table(const GlobalOpts& g, const std::string& name, const std::string& text) {
  if (!g.out_path.empty()) {
    std::filesystem::path p(g.out_path);
    std::string ext = p.extension().string();
    if (ext.empty()) ext = ".csv";
    std::filesystem::path q = p.parent_path() / (p.stem().string() + "_" + name + ext);
    write_file(q.string(), text);
    note(g, "wrote " + q.string());
  } else if (!g.quiet) {
    std::cout << "# " << name << "\n" << text << "\n";
  }
}

Scenario resolve_scenario(const GlobalOpts& g, const std::string& fallback) {
  if (!g.scenario_path.empty())
    return scenario_from_json(Json::parse(read_file(g.scenario_path)));
  std::string name = g.builtin.empty() ? fallback : g.builtin;
  if (name == "random") return random_scenario(g.seed);
  return builtin_scenario(name);
}

std::string element_csv(const KondratievElement& e) {
  std::string out = "alpha,re,im\n";
  for (const auto& [alpha, c] : e.terms()) {
    std::string key;
    for (int v : alpha.dense()) {
      if (!key.empty()) key += ' ';
      key += std::to_string(v);
    }
    out += key + "," + fmt17(c.real()) + "," + fmt17(c.imag()) + "\n";
  }
  return out;
}

std::string run_line(const std::string& name, const RunReport& rep) {
  std::string s = (rep.all_ok ? "[ ok ] " : "[FAIL] ") + name;
  if (rep.noncausal)
    s += "  wh_noncausal=" + fmt17(rep.noncausal->wiener_hopf.max_value);
  if (rep.causal) s += "  wh_causal=" + fmt17(rep.causal->wiener_hopf.max_value);
  const FilterRunSummary* any =
      rep.causal ? &*rep.causal : (rep.noncausal ? &*rep.noncausal : nullptr);
  if (any && any->orthogonality)
    s += "  orth=" + fmt17(any->orthogonality->max_value) +
         (any->orthogonality_exact ? "" : " (truncated)");
  if (rep.oracle.applicable)
    s += "  oracle_diff=" +
         fmt17(std::max(rep.oracle.max_tap_diff_noncausal, rep.oracle.max_tap_diff_causal));
  return s;
}

void emit_report_csv(const GlobalOpts& g, const RunReport& rep) {
  emit_table(g, "spectrum", spectrum_csv(rep.spectra.s_y, rep.num_points));
  if (rep.noncausal) {
    emit_table(g, "noncausal_taps", laurent_csv(rep.noncausal->result.k_ops));
    emit_table(g, "noncausal_residuals", residual_csv(rep.noncausal->wiener_hopf));
  }
  if (rep.causal) {
    emit_table(g, "causal_taps", laurent_csv(rep.causal->result.k_ops));
    emit_table(g, "causal_residuals", residual_csv(rep.causal->wiener_hopf));
  }
}

int cmd_wick(const GlobalOpts& g, const std::string& input) {
  Json j = Json::parse(read_file(input));
  KondratievElement a = element_from_json(j.at("a"));
  KondratievElement b = element_from_json(j.at("b"));
  KondratievElement prod = wick_product(a, b);
  if (g.format == "csv") {
    emit(g, element_csv(prod));
    return 0;
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["product"] = element_to_json(prod);
  out["sum"] = element_to_json(a + b);
  if (j.contains("truncation")) {
    TruncationSpec spec = truncation_from_json(j.at("truncation"));
    VageReport vr = vage_check(a, b, spec);
    Json nb;
    nb["lhs"] = vr.lhs;
    nb["rhs"] = vr.rhs;
    nb["constant"] = vr.constant;
    nb["satisfied"] = vr.satisfied;
    out["norm_bound"] = nb;
  }
  emit(g, json_text(out));
  return 0;
}

int cmd_lift(const GlobalOpts& g, const std::string& input) {
  Json j = Json::parse(read_file(input));
  TruncationSpec spec = truncation_from_json(j.at("truncation"));
  KondratievElement x = element_from_json(j.at("element"));
  int pad = j.value("pad_degree", x.degree());
  BasisPtr in = make_basis(spec);
  BasisPtr out_basis = make_basis(spec.with_degree(spec.max_degree + pad));
  OperatorMatrix m = mult_operator(x, in, out_basis, spec.k);
  if (g.format == "csv") {
    std::string csv = "row,col,re,im\n";
    for (Eigen::Index r = 0; r < m.coords.rows(); ++r)
      for (Eigen::Index c = 0; c < m.coords.cols(); ++c)
        csv += std::to_string(r) + "," + std::to_string(c) + "," +
               fmt17(m.coords(r, c).real()) + "," + fmt17(m.coords(r, c).imag()) + "\n";
    emit(g, csv);
    return 0;
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["rows"] = m.coords.rows();
  out["cols"] = m.coords.cols();
  out["k"] = spec.k;
  out["operator_norm"] = m.operator_norm();
  out["matrix"] = matrix_to_json(m.coords);
  emit(g, json_text(out));
  return 0;
}

int cmd_spectrum(const GlobalOpts& g, int points) {
  Scenario sc = resolve_scenario(g, "identity");
  SpectralPair sp = scenario_spectra(sc);
  int np = points > 0 ? points : default_sample_count(sp.s_y.band());
  PositivityReport pos = positivity_check(sp.s_y, np);
  if (g.format == "csv") {
    emit(g, spectrum_csv(sp.s_y, np));
  } else {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["scenario"] = sc.name;
    out["lag_band"] = sp.lag_band;
    out["num_points"] = np;
    out["s_y"] = laurent_to_json(sp.s_y);
    out["s_uy"] = laurent_to_json(sp.s_uy);
    out["positivity"] = positivity_to_json(pos);
    emit(g, json_text(out));
  }
  note(g, std::string(pos.positive ? "[ ok ] " : "[FAIL] ") + sc.name +
              "  spectrum min eigenvalue " + fmt17(pos.min_eigenvalue));
  return pos.positive ? 0 : 1;
}

int cmd_factorize(const GlobalOpts& g, const std::string& input, double tol) {
  Json j = Json::parse(read_file(input));
  OperatorLaurent s = laurent_from_json(j.contains("s") ? j.at("s") : j);
  FactorizationOptions opts;
  if (tol > 0) opts.tol = tol;
  FactorizationResult fr = spectral_factorize(s, opts);
  if (g.format == "csv") {
    emit(g, laurent_csv(fr.w_plus));
  } else {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["w_plus"] = laurent_to_json(fr.w_plus);
    out["defect"] = fr.defect;
    out["iterations"] = fr.iterations;
    out["min_eigenvalue"] = fr.min_eigenvalue;
    emit(g, json_text(out));
  }
  note(g, "factorized: relative defect " + fmt17(fr.defect) + " after " +
              std::to_string(fr.iterations) + " iterations");
  return 0;
}

int cmd_filter(const GlobalOpts& g, const std::string& mode, long band, double tol) {
  Scenario sc = resolve_scenario(g, "identity");
  if (mode == "noncausal")
    sc.mode = ScenarioMode::noncausal;
  else if (mode == "causal")
    sc.mode = ScenarioMode::causal;
  else if (mode == "both")
    sc.mode = ScenarioMode::both;
  if (band > 0) sc.out_band = band;
  if (tol > 0) {
    sc.tol.wiener_hopf = tol;
    sc.tol.orthogonality = tol;
    sc.tol.oracle_match = tol;
  }
  RunReport rep = run_scenario(sc);
  if (g.format == "csv")
    emit_report_csv(g, rep);
  else
    emit(g, json_text(report_to_json(rep)));
  note(g, run_line(sc.name, rep));
  return rep.all_ok ? 0 : 1;
}

int cmd_verify(const GlobalOpts& g, int nrandom) {
  std::vector<Scenario> scenarios;
  if (!g.scenario_path.empty()) {
    scenarios.push_back(scenario_from_json(Json::parse(read_file(g.scenario_path))));
  } else {
    for (const std::string& name : builtin_scenario_names())
      scenarios.push_back(builtin_scenario(name));
  }
  for (int i = 0; i < nrandom; ++i)
    scenarios.push_back(random_scenario(g.seed + static_cast<std::uint64_t>(i)));

  Json runs = Json::array();
  std::string csv =
      "name,ok,noncausal_wiener_hopf,causal_wiener_hopf,orthogonality,"
      "oracle_noncausal,oracle_causal,error\n";
  bool all_ok = true;
  for (const Scenario& sc : scenarios) {
    Json r;
    r["name"] = sc.name;
    std::string wh_nc, wh_c, orth, od_nc, od_c, err;
    bool ok = false;
    try {
      RunReport rep = run_scenario(sc);
      ok = rep.all_ok;
      r["ok"] = ok;
      if (rep.noncausal) {
        r["noncausal_wiener_hopf"] = rep.noncausal->wiener_hopf.max_value;
        wh_nc = fmt17(rep.noncausal->wiener_hopf.max_value);
      }
      if (rep.causal) {
        r["causal_wiener_hopf"] = rep.causal->wiener_hopf.max_value;
        wh_c = fmt17(rep.causal->wiener_hopf.max_value);
      }
      const FilterRunSummary* any =
          rep.causal ? &*rep.causal : (rep.noncausal ? &*rep.noncausal : nullptr);
      if (any && any->orthogonality) {
        r["orthogonality"] = any->orthogonality->max_value;
        r["orthogonality_exact"] = any->orthogonality_exact;
        orth = fmt17(any->orthogonality->max_value);
      }
      r["oracle_applicable"] = rep.oracle.applicable;
      if (rep.oracle.applicable) {
        r["oracle_noncausal_diff"] = rep.oracle.max_tap_diff_noncausal;
        r["oracle_causal_diff"] = rep.oracle.max_tap_diff_causal;
        od_nc = fmt17(rep.oracle.max_tap_diff_noncausal);
        od_c = fmt17(rep.oracle.max_tap_diff_causal);
      }
      note(g, run_line(sc.name, rep));
    } catch (const std::exception& e) {
      ok = false;
      err = e.what();
      r["ok"] = false;
      r["error"] = err;
      note(g, "[FAIL] " + sc.name + "  " + err);
    }
    csv += sc.name + "," + (ok ? "1" : "0") + "," + wh_nc + "," + wh_c + "," + orth +
           "," + od_nc + "," + od_c + ",\"" + err + "\"\n";
    runs.push_back(r);
    all_ok = all_ok && ok;
  }
  if (g.format == "csv") {
    emit(g, csv);
  } else {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["runs"] = runs;
    out["all_ok"] = all_ok;
    emit(g, json_text(out));
  }
  return all_ok ? 0 : 1;
}

int cmd_demo(const GlobalOpts& g) {
  bool all_ok = true;
  Json arr = Json::array();
  for (const std::string& name : {std::string("additive-scalar"), std::string("additive-stochastic")}) {
    RunReport rep = run_scenario(builtin_scenario(name));
    all_ok = all_ok && rep.all_ok;
    arr.push_back(report_to_json(rep));
    note(g, run_line(name, rep));
    if (rep.causal) {
      const FilterRunSummary& c = *rep.causal;
      note(g, "       observation = signal + constant-spectrum noise; S_y = S_x + V0, S_uy = S_x");
      note(g, "       factorization defect " + fmt17(c.result.diagnostics.factorization_defect));
      if (c.closed_form_distance)
        note(g, "       causal filter vs one-step closed form I - W^{-1} V0: distance " +
                    fmt17(*c.closed_form_distance));
      if (c.closed_form_corrected_distance)
        note(g, "       innovation-normalized closed form: distance " +
                    fmt17(*c.closed_form_corrected_distance));
    }
  }
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["runs"] = arr;
  out["all_ok"] = all_ok;
  emit(g, json_text(out));
  return all_ok ? 0 : 1;
}

int cmd_oracle(const GlobalOpts& g) {
  Scenario sc = resolve_scenario(g, "desk-ar1");
  OracleComparison oc = classical_oracle(sc);
  if (g.format == "csv") {
    std::string csv = "series,lag,re,im\n";
    auto rows = [&csv](const char* label, const scalar::Series& s) {
      for (const auto& [lag, v] : s)
        csv += std::string(label) + "," + std::to_string(lag) + "," + fmt17(v.real()) +
               "," + fmt17(v.imag()) + "\n";
    };
    rows("s_y", oc.s_y);
    rows("s_uy", oc.s_uy);
    rows("noncausal", oc.filters.noncausal);
    rows("causal", oc.filters.causal);
    emit(g, csv);
  } else {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["scenario"] = sc.name;
    out["s_y"] = scalar_series_to_json(oc.s_y);
    out["s_uy"] = scalar_series_to_json(oc.s_uy);
    out["noncausal"] = scalar_series_to_json(oc.filters.noncausal);
    out["causal"] = scalar_series_to_json(oc.filters.causal);
    out["factorization_defect"] = oc.filters.factorization_defect;
    emit(g, json_text(out));
  }
  note(g, "scalar oracle for '" + sc.name + "': factorization defect " +
              fmt17(oc.filters.factorization_defect));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Wiener filtering for discrete-time systems with Wick-stochastic signals:\n"
      "chaos-expansion algebra, multiplication-operator lifts, operator spectral\n"
      "factorization, and causal/noncausal filter synthesis with residual checks."};
  app.require_subcommand(1);

  GlobalOpts g;
  std::string builtin_help = "built-in scenario name (";
  for (const std::string& n : builtin_scenario_names()) builtin_help += n + ", ";
  builtin_help += "random)";
  app.add_option("--scenario", g.scenario_path, "scenario JSON file")->check(CLI::ExistingFile);
  app.add_option("--builtin", g.builtin, builtin_help);
  app.add_option("--out", g.out_path, "write the payload here instead of stdout");
  app.add_option("--format", g.format, "payload format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "seed for random scenario generation");
  app.add_flag("--quiet", g.quiet, "suppress progress lines and stdout payloads");
  app.add_flag("--timing", g.timing, "print wall-clock time to stderr");

  std::string wick_input, lift_input, fact_input;
  std::string mode;
  long band = 0;
  double tol = 0.0, fact_tol = 0.0;
  int points = 0, nrandom = 0;
  int rc = 0;

  CLI::App* wick = app.add_subcommand("wick", "Wick product and sum of two chaos elements from a JSON file");
  wick->add_option("input", wick_input, "JSON file with elements \"a\" and \"b\" (optional \"truncation\" adds the norm-inequality report)")
      ->required()
      ->check(CLI::ExistingFile);
  wick->fallthrough();
  wick->callback([&]() { rc = cmd_wick(g, wick_input); });

  CLI::App* lift = app.add_subcommand("lift", "multiplication-operator matrix of a chaos element");
  lift->add_option("input", lift_input, "JSON file with \"element\", \"truncation\", optional \"pad_degree\"")
      ->required()
      ->check(CLI::ExistingFile);
  lift->fallthrough();
  lift->callback([&]() { rc = cmd_lift(g, lift_input); });

  CLI::App* spectrum = app.add_subcommand("spectrum", "correlation band and spectral density of a scenario's observation");
  spectrum->add_option("--points", points, "circle sample count for the CSV table / positivity check");
  spectrum->fallthrough();
  spectrum->callback([&]() { rc = cmd_spectrum(g, points); });

  CLI::App* factorize = app.add_subcommand("factorize", "canonical spectral factor W+ of an operator Laurent file");
  factorize->add_option("input", fact_input, "JSON file with an operator Laurent polynomial (or {\"s\": ...})")
      ->required()
      ->check(CLI::ExistingFile);
  factorize->add_option("--tol", fact_tol, "factorization convergence target");
  factorize->fallthrough();
  factorize->callback([&]() { rc = cmd_factorize(g, fact_input, fact_tol); });

  CLI::App* filter = app.add_subcommand("filter", "run the full pipeline on a scenario and emit the report");
  filter->add_option("--mode", mode, "noncausal | causal | both (default: scenario's mode)")
      ->check(CLI::IsMember({"noncausal", "causal", "both"}));
  filter->add_option("--band", band, "override the output band");
  filter->add_option("--tol", tol, "override the residual tolerances");
  filter->fallthrough();
  filter->callback([&]() { rc = cmd_filter(g, mode, band, tol); });

  CLI::App* verify = app.add_subcommand("verify", "run residual suites over built-in (or given) scenarios");
  verify->add_option("--random", nrandom, "additionally verify N random scenarios (seeded by --seed)");
  verify->fallthrough();
  verify->callback([&]() { rc = cmd_verify(g, nrandom); });

  CLI::App* demo = app.add_subcommand("demo-additive-noise", "built-in additive-noise walkthrough incl. the one-step closed form");
  demo->fallthrough();
  demo->callback([&]() { rc = cmd_demo(g); });

  CLI::App* oracle = app.add_subcommand("oracle", "classical scalar pipeline for a scalar-reducible scenario");
  oracle->fallthrough();
  oracle->callback([&]() { rc = cmd_oracle(g); });

  auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (g.timing) {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "elapsed %.3f s\n", secs);
  }
  return rc;
}
