#include "gaussent/report.hpp"

#include <stdexcept>

namespace gaussent::cli {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

Physicality physicality_from(const std::string& s) {
  if (s == "pure") return Physicality::Pure;
  if (s == "physical-mixed") return Physicality::PhysicalMixed;
  if (s == "unphysical") return Physicality::Unphysical;
  throw std::invalid_argument("unknown classification: " + s);
}

json xi_json(const XiPair& x) {
  return {{"xi1", x.xi1},
          {"xi2", x.xi2},
          {"classification", std::string(to_string(x.classification))},
          {"ansatz_assumed", x.ansatz_assumed}};
}

XiPair xi_from(const json& j) {
  XiPair x;
  x.xi1 = j.at("xi1").get<double>();
  x.xi2 = j.at("xi2").get<double>();
  x.classification = physicality_from(j.at("classification").get<std::string>());
  x.ansatz_assumed = j.at("ansatz_assumed").get<bool>();
  return x;
}

json entropy_json(const EntropyReport& e) {
  json renyi = json::array();
  for (const auto& r : e.renyi) {
    renyi.push_back({{"alpha", r.alpha}, {"total", r.total}, {"factor1", r.factor1}, {"factor2", r.factor2}});
  }
  json vn = nullptr;
  if (e.von_neumann) {
    vn = {{"total", e.von_neumann->total},
          {"factor1", e.von_neumann->factor1},
          {"factor2", e.von_neumann->factor2}};
  }
  return {{"purity", e.purity}, {"renyi", renyi}, {"von_neumann", vn}, {"von_neumann_note", e.von_neumann_note}};
}

EntropyReport entropy_from(const json& j, const XiPair& xi) {
  EntropyReport e;
  e.xi = xi;
  e.purity = j.at("purity").get<double>();
  for (const auto& r : j.at("renyi")) {
    e.renyi.push_back({r.at("alpha").get<double>(), r.at("total").get<double>(),
                       r.at("factor1").get<double>(), r.at("factor2").get<double>()});
  }
  if (!j.at("von_neumann").is_null()) {
    const auto& v = j.at("von_neumann");
    e.von_neumann = VonNeumannValue{v.at("total").get<double>(), v.at("factor1").get<double>(),
                                    v.at("factor2").get<double>()};
  }
  e.von_neumann_note = j.at("von_neumann_note").get<std::string>();
  return e;
}

json oracle_json(const OracleSummary& o) {
  return {{"grid", {{"half_width", o.grid.half_width}, {"points", o.grid.points}}},
          {"dim", o.dim},
          {"solver", o.solver},
          {"hermiticity_residual", o.hermiticity_residual},
          {"max_imag", o.max_imag},
          {"trace", o.trace},
          {"trace2", o.trace2},
          {"trace3", o.trace3},
          {"trace4", o.trace4},
          {"fitted_xi", o.fitted_xi ? xi_json(*o.fitted_xi) : json(nullptr)},
          {"goodness", opt(o.goodness)},
          {"top_eigenvalues", o.top_eigenvalues},
          {"xi_gap", opt(o.xi_gap)},
          {"spectrum_gap", opt(o.spectrum_gap)},
          {"purity_gap", opt(o.purity_gap)},
          {"trace_gap", opt(o.trace_gap)},
          {"passed", o.passed},
          {"worst", o.worst}};
}

OracleSummary oracle_from(const json& j) {
  OracleSummary o;
  o.grid.half_width = j.at("grid").at("half_width").get<double>();
  o.grid.points = j.at("grid").at("points").get<int>();
  o.dim = j.at("dim").get<long>();
  o.solver = j.at("solver").get<std::string>();
  o.hermiticity_residual = j.at("hermiticity_residual").get<double>();
  o.max_imag = j.at("max_imag").get<double>();
  o.trace = j.at("trace").get<double>();
  o.trace2 = j.at("trace2").get<double>();
  o.trace3 = j.at("trace3").get<double>();
  o.trace4 = j.at("trace4").get<double>();
  if (!j.at("fitted_xi").is_null()) o.fitted_xi = xi_from(j.at("fitted_xi"));
  o.goodness = get_opt<double>(j, "goodness");
  o.top_eigenvalues = j.at("top_eigenvalues").get<std::vector<double>>();
  o.xi_gap = get_opt<double>(j, "xi_gap");
  o.spectrum_gap = get_opt<double>(j, "spectrum_gap");
  o.purity_gap = get_opt<double>(j, "purity_gap");
  o.trace_gap = get_opt<double>(j, "trace_gap");
  o.passed = j.at("passed").get<bool>();
  o.worst = j.at("worst").get<std::string>();
  return o;
}

json purification_json(const PureState3& s) {
  json quad = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int k = 0; k < 3; ++k) row.push_back({s.quad(i, k).real(), s.quad(i, k).imag()});
    quad.push_back(row);
  }
  json out = {{"family", s.family}, {"normalization", s.normalization}, {"quad", quad}, {"type_iii", nullptr}};
  if (s.type_iii) {
    const auto& t = *s.type_iii;
    out["type_iii"] = {{"theta", t.theta}, {"xbar", t.xbar}, {"theta_f", t.theta_f},
                       {"r1", t.r1},       {"r2", t.r2},     {"r3", t.r3},
                       {"phi1", t.phi1},   {"phi2", t.phi2}, {"phi3", t.phi3}};
  }
  return out;
}

PureState3 purification_from(const json& j) {
  PureState3 s;
  s.family = j.at("family").get<std::string>();
  s.normalization = j.at("normalization").get<double>();
  const auto& quad = j.at("quad");
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      s.quad(i, k) = cplx(quad.at(i).at(k).at(0).get<double>(), quad.at(i).at(k).at(1).get<double>());
    }
  }
  if (!j.at("type_iii").is_null()) {
    const auto& t = j.at("type_iii");
    TypeIIIPurificationInfo info;
    info.theta = t.at("theta").get<double>();
    info.xbar = t.at("xbar").get<double>();
    info.theta_f = t.at("theta_f").get<double>();
    info.r1 = t.at("r1").get<double>();
    info.r2 = t.at("r2").get<double>();
    info.r3 = t.at("r3").get<double>();
    info.phi1 = t.at("phi1").get<double>();
    info.phi2 = t.at("phi2").get<double>();
    info.phi3 = t.at("phi3").get<double>();
    s.type_iii = info;
  }
  return s;
}

}  // namespace

json to_json(const RunReport& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["tool"] = {{"name", "gaussent"}, {"version", r.tool_version}};
  j["command"] = r.command;
  j["input"] = {{"type", r.type}, {"params", r.params}};
  j["xi"] = r.xi ? xi_json(*r.xi) : json(nullptr);
  j["entropy"] = r.entropy ? entropy_json(*r.entropy) : json(nullptr);
  j["oracle"] = r.oracle ? oracle_json(*r.oracle) : json(nullptr);
  j["purification"] = r.purification ? purification_json(*r.purification) : json(nullptr);
  j["partial_trace_gap"] = opt(r.partial_trace_gap);
  j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
  j["warnings"] = r.warnings;
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) {
    throw std::invalid_argument("unsupported report schema version " + std::to_string(r.schema_version));
  }
  r.tool_version = j.at("tool").at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.type = j.at("input").at("type").get<std::string>();
  r.params = j.at("input").at("params").get<ParamMap>();
  if (!j.at("xi").is_null()) r.xi = xi_from(j.at("xi"));
  if (!j.at("entropy").is_null()) r.entropy = entropy_from(j.at("entropy"), r.xi.value_or(XiPair{}));
  if (!j.at("oracle").is_null()) r.oracle = oracle_from(j.at("oracle"));
  if (!j.at("purification").is_null()) r.purification = purification_from(j.at("purification"));
  r.partial_trace_gap = get_opt<double>(j, "partial_trace_gap");
  r.elapsed_seconds = j.at("timing").at("elapsed_seconds").get<double>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

}  // namespace gaussent::cli
