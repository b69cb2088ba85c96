#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaussent/entropy.hpp"
#include "gaussent/oracle.hpp"
#include "gaussent/purification.hpp"

namespace gaussent::cli {

inline constexpr int kSchemaVersion = 1;

using ParamMap = std::map<std::string, double>;

struct OracleSummary {
  Grid grid;
  long dim = 0;
  std::string solver;
  double hermiticity_residual = 0.0;
  double max_imag = 0.0;
  double trace = 0.0, trace2 = 0.0, trace3 = 0.0, trace4 = 0.0;
  std::optional<XiPair> fitted_xi;
  std::optional<double> goodness;
  std::vector<double> top_eigenvalues;
  // Analytic-vs-numeric comparisons (verify only).
  std::optional<double> xi_gap;
  std::optional<double> spectrum_gap;
  std::optional<double> purity_gap;
  std::optional<double> trace_gap;
  bool passed = true;
  std::string worst;
};

struct RunReport {
  int schema_version = kSchemaVersion;
  std::string tool_version;
  std::string command;
  std::string type;
  ParamMap params;
  std::optional<XiPair> xi;
  std::optional<EntropyReport> entropy;
  std::optional<OracleSummary> oracle;
  std::optional<PureState3> purification;
  std::optional<double> partial_trace_gap;
  double elapsed_seconds = 0.0;
  std::vector<std::string> warnings;
};

nlohmann::json to_json(const RunReport& r);
/// Inverse of to_json; throws nlohmann::json::exception on schema mismatch.
RunReport report_from_json(const nlohmann::json& j);

}  // namespace gaussent::cli
