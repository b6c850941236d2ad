#pragma once

#include "lieharm/builders.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieharm::runner {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.3.0";

enum class JobKind { CheckAlgebra, Construct, VerifyFamily, SecondConstruction, FoliationScan, Curvature };

const char* to_string(JobKind k);
std::optional<JobKind> parse_kind(const std::string& s);

/// Bad config: the message names the line/column or the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Sampling {
  int count = 100;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

struct JobConfig {
  JobKind kind = JobKind::CheckAlgebra;
  Json algebra;  // normalized: {"builtin": name, params...} or {"inline": {...}}
  Sampling sampling;
  std::map<std::string, double> tolerances;  // defaults merged with overrides
  std::string output;
  Json options = Json::object();  // job-specific keys (family, post, beta_root, grid, expect, vertical, ...)

  double tol(const std::string& name) const { return tolerances.at(name); }
  Json echo() const;
};

/// Tolerance names and default values.
const std::map<std::string, double>& default_tolerances();

/// Parses JSON text.  Throws ConfigError.  A seed must come from the config or from seed_override.
JobConfig parse_config(const std::string& text, std::optional<std::uint64_t> seed_override = {});
JobConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = {});

/// "name=value" tolerance override.
void apply_tolerance_override(JobConfig& cfg, const std::string& assignment);

/// The group named by a normalized algebra object.  Throws ConfigError on bad parameters.
BuiltGroup resolve_algebra(const Json& algebra);

struct CheckRecord {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct Report {
  Json job;
  std::vector<CheckRecord> checks;
  std::uint64_t seed = 0;
  Json details = Json::object();
  double wall_time = 0.0;
  bool pass = false;

  Json to_json() const;
  std::string summary() const;
};

/// Deterministic in (config, seed) apart from wall_time.
Report run(const JobConfig& cfg);

/// Fixed 17-significant-digit decimal string.
std::string format_number(double x);

/// Names, parameter schemas and descriptions of the built-in groups.
Json list_builtins();

}  // namespace lieharm::runner
