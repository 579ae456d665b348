#include "wns/serialize.hpp"

#include <cstdio>
#include <stdexcept>

#include "wns/errors.hpp"

namespace wns {

namespace {

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Json element_to_json(const KondratievElement& e) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : e.terms()) {
    Json t;
    t["alpha"] = alpha.dense();
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(std::move(t));
  }
  Json j;
  j["terms"] = std::move(terms);
  return j;
}

KondratievElement element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("element JSON needs a 'terms' array");
  KondratievElement e;
  for (const Json& t : j["terms"]) {
    std::vector<int> dense = t.at("alpha").get<std::vector<int>>();
    e.add_term(MultiIndex::from_dense(dense),
               Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  }
  return e;
}

Json truncation_to_json(const TruncationSpec& t) {
  Json j;
  j["num_vars"] = t.num_vars;
  j["max_degree"] = t.max_degree;
  j["k"] = t.k;
  j["ell"] = t.ell;
  return j;
}

TruncationSpec truncation_from_json(const Json& j) {
  return TruncationSpec(j.at("num_vars").get<int>(), j.at("max_degree").get<int>(),
                        j.at("k").get<int>(), j.at("ell").get<int>());
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(complex_to_json(m(r, c)));
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  auto rows = j.at("rows").get<Eigen::Index>();
  auto cols = j.at("cols").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::invalid_argument("matrix JSON data length does not match rows*cols");
  Eigen::MatrixXcd m(rows, cols);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(data[i++]);
  return m;
}

Json laurent_to_json(const OperatorLaurent& a) {
  Json coeffs = Json::array();
  for (const auto& [lag, m] : a.coeffs()) {
    Json entry;
    entry["lag"] = lag;
    Json flat = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(complex_to_json(m(r, c)));
    entry["matrix"] = std::move(flat);
    coeffs.push_back(std::move(entry));
  }
  Json j;
  j["dim"] = a.dim();
  j["coeffs"] = std::move(coeffs);
  return j;
}

OperatorLaurent laurent_from_json(const Json& j) {
  int dim = j.at("dim").get<int>();
  if (dim < 0) throw std::invalid_argument("laurent JSON needs dim >= 0");
  OperatorLaurent a(dim);
  for (const Json& entry : j.at("coeffs")) {
    const Json& flat = entry.at("matrix");
    if (static_cast<long>(flat.size()) != static_cast<long>(dim) * dim)
      throw std::invalid_argument("laurent coefficient length does not match dim^2");
    Eigen::MatrixXcd m(dim, dim);
    Eigen::Index i = 0;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) m(r, c) = complex_from_json(flat[i++]);
    a.set_coefficient(entry.at("lag").get<long>(), std::move(m));
  }
  return a;
}

Json process_to_json(const ProcessSpec& p) {
  Json j;
  switch (p.kind) {
    case ProcessSpec::Kind::white:
      j["kind"] = "white";
      j["variance"] = p.white.variance;
      j["id"] = p.white.id;
      break;
    case ProcessSpec::Kind::deterministic:
      j["kind"] = "deterministic";
      if (p.det.whole_line) {
        j["constant"] = complex_to_json(p.det.constant);
      } else {
        j["start"] = p.det.start;
        Json vals = Json::array();
        for (Complex v : p.det.values) vals.push_back(complex_to_json(v));
        j["values"] = std::move(vals);
      }
      break;
    case ProcessSpec::Kind::modulated:
      j["kind"] = "modulated";
      j["lambda"] = complex_to_json(p.mod.lambda);
      j["rho"] = element_to_json(p.mod.rho);
      break;
    case ProcessSpec::Kind::wick_ma: {
      j["kind"] = "wick_ma";
      Json taps = Json::array();
      for (const auto& [lag, h] : p.ma.taps) {
        Json t;
        t["lag"] = lag;
        t["element"] = element_to_json(h);
        taps.push_back(std::move(t));
      }
      j["taps"] = std::move(taps);
      j["input"] = process_to_json(*p.ma.input);
      break;
    }
  }
  return j;
}

ProcessSpec process_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "white")
    return ProcessSpec::make_white(j.value("variance", 1.0), j.value("id", 0));
  if (kind == "deterministic") {
    if (j.contains("constant")) return ProcessSpec::make_constant(complex_from_json(j["constant"]));
    std::vector<Complex> values;
    for (const Json& v : j.at("values")) values.push_back(complex_from_json(v));
    return ProcessSpec::make_window(j.value("start", 0L), std::move(values));
  }
  if (kind == "modulated")
    return ProcessSpec::make_modulated(complex_from_json(j.at("lambda")),
                                       element_from_json(j.at("rho")));
  if (kind == "wick_ma") {
    std::vector<std::pair<long, KondratievElement>> taps;
    for (const Json& t : j.at("taps"))
      taps.emplace_back(t.at("lag").get<long>(), element_from_json(t.at("element")));
    return ProcessSpec::make_wick_ma(std::move(taps), process_from_json(j.at("input")));
  }
  throw std::invalid_argument("unknown process kind '" + kind + "'");
}

namespace {

const char* mode_name(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::noncausal: return "noncausal";
    case ScenarioMode::causal: return "causal";
    default: return "both";
  }
}

ScenarioMode mode_from_name(const std::string& s) {
  if (s == "noncausal") return ScenarioMode::noncausal;
  if (s == "causal") return ScenarioMode::causal;
  if (s == "both") return ScenarioMode::both;
  throw std::invalid_argument("unknown filter mode '" + s + "'");
}

Json tolerances_to_json(const Tolerances& t) {
  Json j;
  j["stationarity"] = t.stationarity;
  j["tail"] = t.tail;
  j["factorization"] = t.factorization;
  j["positivity_margin"] = t.positivity_margin;
  j["wiener_hopf"] = t.wiener_hopf;
  j["orthogonality"] = t.orthogonality;
  j["oracle_match"] = t.oracle_match;
  return j;
}

Tolerances tolerances_from_json(const Json& j) {
  Tolerances t;
  t.stationarity = j.value("stationarity", t.stationarity);
  t.tail = j.value("tail", t.tail);
  t.factorization = j.value("factorization", t.factorization);
  t.positivity_margin = j.value("positivity_margin", t.positivity_margin);
  t.wiener_hopf = j.value("wiener_hopf", t.wiener_hopf);
  t.orthogonality = j.value("orthogonality", t.orthogonality);
  t.oracle_match = j.value("oracle_match", t.oracle_match);
  return t;
}

}  // namespace

Json scenario_to_json(const Scenario& sc) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["name"] = sc.name;
  j["truncation"] = truncation_to_json(sc.truncation);
  if (sc.target) j["target"] = process_to_json(*sc.target);
  if (sc.observation) j["observation"] = process_to_json(*sc.observation);
  if (sc.additive) {
    Json a;
    a["signal"] = process_to_json(sc.additive->signal);
    a["scalar_noise"] = sc.additive->scalar_noise;
    if (sc.additive->scalar_noise)
      a["v0"] = sc.additive->v0_scalar;
    else
      a["v0_matrix"] = matrix_to_json(sc.additive->v0_matrix);
    j["additive"] = std::move(a);
  }
  j["lag_band"] = sc.lag_band;
  j["out_band"] = sc.out_band;
  j["stat_window"] = sc.stat_window;
  j["mode"] = mode_name(sc.mode);
  j["tolerances"] = tolerances_to_json(sc.tol);
  return j;
}

Scenario scenario_from_json(const Json& j) {
  if (j.value("schema_version", -1) != kSchemaVersion)
    throw std::invalid_argument("unsupported scenario schema_version");
  Scenario sc;
  sc.name = j.value("name", std::string{});
  sc.truncation = truncation_from_json(j.at("truncation"));
  if (j.contains("target")) sc.target = process_from_json(j["target"]);
  if (j.contains("observation")) sc.observation = process_from_json(j["observation"]);
  if (j.contains("additive")) {
    const Json& a = j["additive"];
    AdditiveNoise an{process_from_json(a.at("signal")), a.value("scalar_noise", true), 1.0, {}};
    if (an.scalar_noise)
      an.v0_scalar = a.at("v0").get<double>();
    else
      an.v0_matrix = matrix_from_json(a.at("v0_matrix"));
    sc.additive = std::move(an);
  }
  sc.lag_band = j.value("lag_band", 4L);
  sc.out_band = j.value("out_band", 0L);
  sc.stat_window = j.value("stat_window", 2);
  sc.mode = mode_from_name(j.value("mode", std::string{"both"}));
  if (j.contains("tolerances")) sc.tol = tolerances_from_json(j["tolerances"]);
  return sc;
}

Json scalar_series_to_json(const scalar::Series& s) {
  Json arr = Json::array();
  for (const auto& [lag, c] : s) {
    Json t;
    t["lag"] = lag;
    t["re"] = c.real();
    t["im"] = c.imag();
    arr.push_back(std::move(t));
  }
  return arr;
}

Json residual_to_json(const ResidualReport& r) {
  Json values = Json::array();
  for (const auto& [lag, v] : r.values) {
    Json t;
    t["lag"] = lag;
    t["norm"] = v;
    values.push_back(std::move(t));
  }
  Json j;
  j["values"] = std::move(values);
  j["max"] = r.max_value;
  return j;
}

Json stationarity_to_json(const StationarityReport& r) {
  Json j;
  j["spread"] = r.spread;
  j["tol"] = r.tol;
  j["stationary"] = r.stationary;
  return j;
}

Json positivity_to_json(const PositivityReport& r) {
  Json j;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["hermitian_defect"] = r.hermitian_defect;
  j["num_points"] = r.num_points;
  j["margin"] = r.margin;
  j["positive"] = r.positive;
  return j;
}

Json filter_result_to_json(const FilterResult& fr) {
  Json j;
  j["mode"] = fr.mode == FilterMode::causal ? "causal" : "noncausal";
  j["out_band"] = fr.out_band;
  j["truncation"] = truncation_to_json(fr.spec);
  j["k"] = laurent_to_json(fr.k_ops);
  Json symbols = Json::array();
  for (const auto& [lag, e] : fr.k_symbols) {
    Json t;
    t["lag"] = lag;
    t["element"] = element_to_json(e);
    symbols.push_back(std::move(t));
  }
  j["symbols"] = std::move(symbols);
  Json d;
  d["factorization_defect"] = fr.diagnostics.factorization_defect;
  d["inverse_defect"] = fr.diagnostics.inverse_defect;
  d["wiener_hopf_max"] = fr.diagnostics.wiener_hopf_max;
  d["multiplicativity_defect"] = fr.diagnostics.multiplicativity_defect;
  if (fr.diagnostics.orthogonality_max)
    d["orthogonality_max"] = *fr.diagnostics.orthogonality_max;
  j["diagnostics"] = std::move(d);
  return j;
}

Json summary_to_json(const FilterRunSummary& s) {
  Json j;
  j["filter"] = filter_result_to_json(s.result);
  j["wiener_hopf"] = residual_to_json(s.wiener_hopf);
  if (s.orthogonality) {
    j["orthogonality"] = residual_to_json(*s.orthogonality);
    j["orthogonality_exact"] = s.orthogonality_exact;
  }
  if (s.closed_form_distance) j["closed_form_distance"] = *s.closed_form_distance;
  if (s.closed_form_corrected_distance)
    j["closed_form_corrected_distance"] = *s.closed_form_corrected_distance;
  j["ok"] = s.ok;
  return j;
}

Json oracle_to_json(const OracleComparison& oc) {
  Json j;
  j["applicable"] = oc.applicable;
  if (!oc.applicable) return j;
  j["s_y"] = scalar_series_to_json(oc.s_y);
  j["s_uy"] = scalar_series_to_json(oc.s_uy);
  j["noncausal"] = scalar_series_to_json(oc.filters.noncausal);
  j["causal"] = scalar_series_to_json(oc.filters.causal);
  j["factorization_defect"] = oc.filters.factorization_defect;
  j["max_tap_diff_noncausal"] = oc.max_tap_diff_noncausal;
  j["max_tap_diff_causal"] = oc.max_tap_diff_causal;
  j["ok"] = oc.ok;
  return j;
}

Json report_to_json(const RunReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = scenario_to_json(rep.scenario);
  Json st;
  st["target"] = stationarity_to_json(rep.stat_target);
  if (rep.stat_observation) st["observation"] = stationarity_to_json(*rep.stat_observation);
  j["stationarity"] = std::move(st);
  Json sp;
  sp["lag_band"] = rep.spectra.lag_band;
  sp["s_y"] = laurent_to_json(rep.spectra.s_y);
  sp["s_uy"] = laurent_to_json(rep.spectra.s_uy);
  j["spectra"] = std::move(sp);
  j["positivity"] = positivity_to_json(rep.positivity);
  j["num_points"] = rep.num_points;
  if (rep.noncausal) j["noncausal"] = summary_to_json(*rep.noncausal);
  if (rep.causal) j["causal"] = summary_to_json(*rep.causal);
  j["oracle"] = oracle_to_json(rep.oracle);
  j["all_ok"] = rep.all_ok;
  return j;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string spectrum_csv(const OperatorLaurent& a, int num_points) {
  int np = num_points > 0 ? num_points : default_sample_count(a.band());
  std::vector<Eigen::MatrixXcd> samples = sample_circle(a, np);
  const int dim = a.dim();
  std::string out = "omega";
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      std::string tag = "_" + std::to_string(r) + "_" + std::to_string(c);
      out += ",s" + tag + "_re,s" + tag + "_im";
    }
  out += ",min_eigenvalue\n";
  for (int p = 0; p < np; ++p) {
    double omega = 2.0 * M_PI * static_cast<double>(p) / static_cast<double>(np);
    out += fmt(omega);
    const Eigen::MatrixXcd& v = samples[static_cast<std::size_t>(p)];
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        out += "," + fmt(v(r, c).real()) + "," + fmt(v(r, c).imag());
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((v + v.adjoint()) / 2.0);
    double min_eig = dim > 0 ? es.eigenvalues().minCoeff() : 0.0;
    out += "," + fmt(min_eig) + "\n";
  }
  return out;
}

std::string laurent_csv(const OperatorLaurent& a) {
  const int dim = a.dim();
  std::string out = "lag";
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      std::string tag = "_" + std::to_string(r) + "_" + std::to_string(c);
      out += ",a" + tag + "_re,a" + tag + "_im";
    }
  out += "\n";
  for (const auto& [lag, m] : a.coeffs()) {
    out += std::to_string(lag);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) out += "," + fmt(m(r, c).real()) + "," + fmt(m(r, c).imag());
    out += "\n";
  }
  return out;
}

std::string residual_csv(const ResidualReport& r) {
  std::string out = "lag,norm\n";
  for (const auto& [lag, v] : r.values) out += std::to_string(lag) + "," + fmt(v) + "\n";
  return out;
}

}  // namespace wns
