#include <charconv>
#include <cmath>
#include <string>

#include "gaussent/cli.hpp"
#include "gaussent/errors.hpp"

namespace gaussent::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

double number_or_throw(std::string_view s, const std::string& what) {
  double v = 0.0;
  if (!parse_number(s, v)) throw InvalidParams("malformed number for " + what + ": '" + std::string(s) + "'");
  return v;
}

double resolve(const RawParams& raw, const std::string& key, int depth) {
  if (depth > 8) throw InvalidParams("parameter references form a cycle at '" + key + "'");
  const auto it = raw.find(key);
  if (it == raw.end()) throw InvalidParams("missing parameter '" + key + "'");
  double v = 0.0;
  if (parse_number(it->second, v)) return v;
  std::string_view ref = trim(it->second);
  double sign = 1.0;
  if (!ref.empty() && ref.front() == '-') {
    sign = -1.0;
    ref.remove_prefix(1);
  }
  if (raw.find(std::string(ref)) == raw.end()) {
    throw InvalidParams("parameter '" + key + "' has value '" + it->second +
                        "' which is neither a number nor another parameter");
  }
  return sign * resolve(raw, std::string(ref), depth + 1);
}

}  // namespace

RawParams parse_kv(std::string_view text) {
  RawParams out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
        throw InvalidParams("expected key=value, got '" + std::string(item) + "'");
      }
      const std::string key(trim(item.substr(0, eq)));
      if (out.count(key)) throw InvalidParams("parameter '" + key + "' given twice");
      out[key] = std::string(trim(item.substr(eq + 1)));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

const std::vector<std::string>& param_names(std::string_view type) {
  static const std::vector<std::string> single{"a1", "a2", "b"};
  static const std::vector<std::string> t1{"a1", "a2", "b", "c", "f"};
  static const std::vector<std::string> t2{"a1", "a2", "b1", "b2", "c", "f"};
  static const std::vector<std::string> t3{"a1", "a2", "b", "c1", "c2", "fr", "fi"};
  static const std::vector<std::string> t4{"a1", "a2", "b", "c", "f1", "f2"};
  if (type == "single") return single;
  if (type == "I") return t1;
  if (type == "II") return t2;
  if (type == "III") return t3;
  if (type == "IV") return t4;
  throw InvalidParams("unknown kernel type '" + std::string(type) + "' (expected single, I, II, III, IV)");
}

GaussianKernelParams build_params(std::string_view type, const RawParams& raw, ParamMap* resolved) {
  const auto& names = param_names(type);
  for (const auto& [key, value] : raw) {
    bool known = false;
    for (const auto& n : names) known = known || n == key;
    if (!known) throw InvalidParams("unknown parameter '" + key + "' for type " + std::string(type));
  }
  ParamMap v;
  for (const auto& n : names) {
    // Type III: an omitted imaginary part means real f.
    if (type == "III" && n == "fi" && !raw.count("fi")) {
      v[n] = 0.0;
      continue;
    }
    v[n] = resolve(raw, n, 0);
  }
  if (resolved) *resolved = v;
  GaussianKernelParams p;
  if (type == "single") p = SingleParams{v["a1"], v["a2"], v["b"]};
  else if (type == "I") p = TypeIParams{v["a1"], v["a2"], v["b"], v["c"], v["f"]};
  else if (type == "II") p = TypeIIParams{v["a1"], v["a2"], v["b1"], v["b2"], v["c"], v["f"]};
  else if (type == "III") p = TypeIIIParams{v["a1"], v["a2"], v["b"], v["c1"], v["c2"], cplx(v["fr"], v["fi"])};
  else p = TypeIVParams{v["a1"], v["a2"], v["b"], v["c"], v["f1"], v["f2"]};
  return p;
}

ParamMap to_param_map(const GaussianKernelParams& params) {
  ParamMap m;
  std::visit(
      [&m](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SingleParams>) {
          m = {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b}};
        } else if constexpr (std::is_same_v<T, TypeIParams>) {
          m = {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b}, {"c", p.c}, {"f", p.f}};
        } else if constexpr (std::is_same_v<T, TypeIIParams>) {
          m = {{"a1", p.a1}, {"a2", p.a2}, {"b1", p.b1}, {"b2", p.b2}, {"c", p.c}, {"f", p.f}};
        } else if constexpr (std::is_same_v<T, TypeIIIParams>) {
          m = {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b}, {"c1", p.c1}, {"c2", p.c2},
               {"fr", p.f.real()}, {"fi", p.f.imag()}};
        } else {
          m = {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b}, {"c", p.c}, {"f1", p.f1}, {"f2", p.f2}};
        }
      },
      params);
  return m;
}

AlphaSpec parse_alphas(std::string_view text) {
  AlphaSpec spec;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = trim(text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos));
    if (item == "von" || item == "vn" || item == "1") {
      spec.von_neumann = true;
    } else if (!item.empty()) {
      const double a = number_or_throw(item, "alpha");
      if (!(a > 0.0)) throw InvalidParams("Renyi order must be positive");
      spec.orders.push_back(a);
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (spec.orders.empty() && !spec.von_neumann) throw InvalidParams("no entropy orders requested");
  return spec;
}

SweepRange parse_range(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw InvalidParams("range must look like key=start:stop:step");
  SweepRange r;
  r.key = std::string(trim(text.substr(0, eq)));
  const std::string_view body = text.substr(eq + 1);
  const std::size_t c1 = body.find(':');
  const std::size_t c2 = c1 == std::string_view::npos ? c1 : body.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos || body.find(':', c2 + 1) != body.npos) {
    throw InvalidParams("range must look like key=start:stop:step");
  }
  r.start = number_or_throw(body.substr(0, c1), "range start");
  r.stop = number_or_throw(body.substr(c1 + 1, c2 - c1 - 1), "range stop");
  r.step = number_or_throw(body.substr(c2 + 1), "range step");
  if (!(r.step > 0.0)) throw InvalidParams("range step must be positive");
  if (r.stop < r.start) throw InvalidParams("range stop must not be below start");
  if ((r.stop - r.start) / r.step > 1e6) throw InvalidParams("range has more than 1e6 points");
  return r;
}

std::vector<double> SweepRange::values() const {
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = start + static_cast<double>(i) * step;
  return v;
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return kExitInvalid;
    case ErrorKind::ResourceLimit: return kExitResource;
    case ErrorKind::ConditionNotMet:
    case ErrorKind::NegativeZ: return kExitCondition;
    default: return kExitDomain;
  }
}

}  // namespace gaussent::cli
