#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/errors.hpp"
#include "gaussent/kernel_params.hpp"
#include "gaussent/report.hpp"

namespace gaussent::cli {

/// Raw `k=v,...` pairs. Values are numbers or, for scans, the name of another
/// key, optionally negated (`f=c`, `f=-c`).
using RawParams = std::map<std::string, std::string>;

RawParams parse_kv(std::string_view text);

/// Names accepted for a family, in canonical order (type III uses fr, fi for f).
const std::vector<std::string>& param_names(std::string_view type);

/// Resolves references and builds the parameter variant. Throws InvalidParams.
GaussianKernelParams build_params(std::string_view type, const RawParams& raw,
                                  ParamMap* resolved = nullptr);

ParamMap to_param_map(const GaussianKernelParams& p);

struct AlphaSpec {
  std::vector<double> orders;
  bool von_neumann = false;
};

/// "2,3,von" -> orders {2, 3} plus von Neumann.
AlphaSpec parse_alphas(std::string_view text);

struct SweepRange {
  std::string key;
  double start = 0.0, stop = 0.0, step = 0.0;

  std::vector<double> values() const;
};

/// "c=0:0.3:0.01"; throws InvalidParams when malformed.
SweepRange parse_range(std::string_view text);

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitDomain = 3,
  kExitVerifyFailed = 4,
  kExitResource = 5,
  kExitCondition = 6,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs the command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaussent::cli
