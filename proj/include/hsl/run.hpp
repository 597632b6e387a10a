#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsl/classify.hpp"
#include "hsl/hankel.hpp"
#include "hsl/measure.hpp"
#include "hsl/simulator.hpp"

namespace hsl {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "hankel-symbol-lab/1";

enum class Command { integrals, pick, symbol, verify_symbol, gram, positivity, classify, example_t, simulate };

std::string to_string(Command c);

struct XGridSpec {
  double lo = 1e-3;
  double hi = 1e3;
  int n = 25;
  bool symmetric = true;  // mirror the log grid onto x < 0
};

struct SimulatorSpec {
  int n = 4096;
  double x_max = 64.0;
  int trials = 200;
  bool trials_set = false;  // example-t runs 50 trials unless set
  std::vector<double> t_list{0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
};

struct SymbolSpec {
  // i_sgn, example_beta_closed, beta (from measure, projection and C) or
  // i_imag (β with p = 1, i.e. i times the boundary imaginary part)
  std::string name;
  std::vector<double> params;
  std::optional<int> dim;
  double sign = 1.0;  // -1 negates the symbol
};

struct RunConfig {
  Command command = Command::integrals;
  std::optional<CarlesonMeasure> measure;
  std::optional<SymbolSpec> symbol;
  std::optional<Matrix> projection;
  std::optional<Matrix> c_block;
  std::optional<double> t;
  std::optional<double> alpha;
  std::optional<std::string> expect;
  XGridSpec x_grid;
  int gram_axis_points = 6;
  SimulatorSpec simulator;
  std::map<std::string, double> tolerances;  // defaults merged with overrides
  std::uint64_t seed = 0;
  Json echo;  // the config as given, repeated in the report
};

/// Tolerance keys and their defaults.
const std::map<std::string, double>& default_tolerances();

/// Applies `key=value`; unknown keys and nonpositive values raise ConfigError.
void apply_tolerance_override(RunConfig& config, const std::string& assignment);

RunConfig parse_config(const Json& j);

Json measure_to_json(const CarlesonMeasure& mu);
CarlesonMeasure measure_from_json(const Json& j, const std::string& path = "measure");

struct RunOptions {
  bool timing = false;
};

struct RunOutput {
  Json report;
  bool ok = true;
  std::map<std::string, std::string> csv;  // file name -> contents
};

RunOutput run(const RunConfig& config, const RunOptions& options = {});

/// One identity of the half-line integral oracle suite at parameter x.
struct IntegralIdentity {
  std::string name;
  std::function<double(double lambda, double x)> integrand;
  std::function<double(double x)> closed_form;
};

const std::vector<IntegralIdentity>& integral_identities();

}  // namespace hsl
