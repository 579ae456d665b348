#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wns/filters.hpp"
#include "wns/scalar_wiener.hpp"

namespace wns {

struct Tolerances {
  double stationarity = 1e-10;
  double tail = 1e-10;
  double factorization = 1e-10;    // iteration target
  double positivity_margin = 1e-8;
  double wiener_hopf = 1e-6;
  double orthogonality = 1e-6;
  double oracle_match = 1e-6;
};

// Observation y = signal + v with v uncorrelated with the signal and
// spectrally constant: S_v = v0 (scalar * I, or a full matrix on the base
// basis). The filtering target is the signal itself.
struct AdditiveNoise {
  ProcessSpec signal;
  bool scalar_noise = true;
  double v0_scalar = 1.0;
  Eigen::MatrixXcd v0_matrix;  // used when !scalar_noise
};

enum class ScenarioMode { noncausal, causal, both };

// A complete batch filtering problem. Exactly one of `observation`
// (explicit process, with `target` required) or `additive` must be set.
struct Scenario {
  std::string name;
  TruncationSpec truncation{1, 0};
  std::optional<ProcessSpec> target;
  std::optional<ProcessSpec> observation;
  std::optional<AdditiveNoise> additive;
  long lag_band = 4;
  long out_band = 0;  // 0: 4 * lag_band
  int stat_window = 2;
  ScenarioMode mode = ScenarioMode::both;
  Tolerances tol;

  long effective_out_band() const { return out_band > 0 ? out_band : 4 * lag_band; }
  const ProcessSpec& target_process() const;
};

// One filter run plus its residual evidence.
struct FilterRunSummary {
  FilterResult result;
  ResidualReport wiener_hopf;
  std::optional<ResidualReport> orthogonality;
  bool orthogonality_exact = false;  // padded compression vs truncated fallback
  // Additive scenarios, causal mode: distances to the one-step closed forms.
  std::optional<double> closed_form_distance;            // || K - (I - W^{-1} V0) ||_W
  std::optional<double> closed_form_corrected_distance;  // innovation-normalized version
  bool ok = false;
};

struct OracleComparison {
  bool applicable = false;
  scalar::Series s_y;
  scalar::Series s_uy;
  scalar::Filters filters;
  double max_tap_diff_noncausal = 0.0;  // max_m || K_m - k_m I ||_op
  double max_tap_diff_causal = 0.0;
  bool ok = true;
};

struct RunReport {
  Scenario scenario;
  StationarityReport stat_target;
  std::optional<StationarityReport> stat_observation;
  SpectralPair spectra;
  PositivityReport positivity;
  int num_points = 0;  // circle sampling used for reporting
  std::optional<FilterRunSummary> noncausal;
  std::optional<FilterRunSummary> causal;
  OracleComparison oracle;
  bool all_ok = false;
};

// Runs the full pipeline: validation, stationarity, spectra, positivity,
// filters for the requested modes, residual suites, scalar-oracle
// comparison where the scenario reduces, and closed-form distances for
// additive scenarios. Stage failures rethrow as ScenarioError naming the
// stage.
RunReport run_scenario(const Scenario& sc);

// Assembles the observation spectra for a scenario (exposed for tools).
SpectralPair scenario_spectra(const Scenario& sc);

// Scalar reduction of the scenario: spectra and filters computed entirely
// in scalar arithmetic. Throws Error when the scenario does not reduce.
OracleComparison classical_oracle(const Scenario& sc);

// Built-in desk scenarios: "identity", "desk-ar1", "additive-scalar",
// "additive-stochastic". Throws std::invalid_argument for unknown names.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

// Deterministic pseudo-random stochastic scenario (additive noise over a
// random Wick moving average); used by the verification tool.
Scenario random_scenario(std::uint64_t seed);

}  // namespace wns
