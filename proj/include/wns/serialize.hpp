#pragma once

#include <string>

#include "json.hpp"
#include "wns/scenario.hpp"

namespace wns {

// Ordered JSON keeps object keys in insertion order, so every writer below
// is deterministic: identical inputs produce identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json element_to_json(const KondratievElement& e);
KondratievElement element_from_json(const Json& j);

Json truncation_to_json(const TruncationSpec& t);
TruncationSpec truncation_from_json(const Json& j);

Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json laurent_to_json(const OperatorLaurent& a);
OperatorLaurent laurent_from_json(const Json& j);

Json process_to_json(const ProcessSpec& p);
ProcessSpec process_from_json(const Json& j);

// Scenario files carry {"schema_version": 1, ...}; readers reject other
// versions with std::invalid_argument.
Json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const Json& j);

Json scalar_series_to_json(const scalar::Series& s);
Json residual_to_json(const ResidualReport& r);
Json stationarity_to_json(const StationarityReport& r);
Json positivity_to_json(const PositivityReport& r);
Json filter_result_to_json(const FilterResult& fr);
Json summary_to_json(const FilterRunSummary& s);
Json oracle_to_json(const OracleComparison& oc);
Json report_to_json(const RunReport& rep);

// Canonical file text: two-space indentation plus a trailing newline. The
// reproducibility checks compare these strings byte for byte.
std::string json_text(const Json& j);

// CSV writers. All numbers are printed with "%.17g" (round-trip exact).
// Sampled symbol values around the circle: one row per frequency with the
// matrix entries and the minimum eigenvalue of the Hermitian part.
std::string spectrum_csv(const OperatorLaurent& a, int num_points = 0);
// One row per stored lag with the coefficient entries.
std::string laurent_csv(const OperatorLaurent& a);
std::string residual_csv(const ResidualReport& r);

}  // namespace wns
