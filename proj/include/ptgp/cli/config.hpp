#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "ptgp/path.hpp"
#include "ptgp/registry.hpp"
#include "ptgp/thermal.hpp"
#include "ptgp/tolerances.hpp"

namespace ptgp::cli {

struct ModelConfig {
  std::string name = "two-level-pt";
  ModelParams params;
};

struct PathConfig {
  std::string type = "latitude";  // latitude | custom-polyline
  double theta = 1.5707963267948966;
  std::size_t samples = 4000;     // intervals along the loop
  double tau = 6.283185307179586;
  std::vector<ParameterPoint> vertices;
};

struct ScanConfig {
  double beta_min = 0.1;
  double beta_max = 5.0;
  std::size_t beta_steps = 100;
  double theta_min = 0.0;
  double theta_max = 3.141592653589793;
  std::size_t theta_steps = 100;
  bool log_beta = false;
};

struct OutputConfig {
  std::string format = "csv";  // csv | json
  std::string path;            // empty: standard output
};

struct OracleConfig {
  std::vector<double> ramp_factors{10.0, 50.0, 200.0};
  std::size_t level = 1;
  std::size_t samples = 1000;
  double theta = 1.0;
  double ramp = 200.0;  // evolve
};

struct RunConfig {
  ModelConfig model;
  PathConfig path;
  ScanConfig scan;
  OutputConfig output;
  Tolerances tolerances;
  OracleConfig oracle;
  unsigned threads = 0;
};

// INI text with [model], [path], [scan], [output], [tolerances], [oracle]
// sections. Overrides have the form "section.key=value" (leading dashes are
// ignored). Parse and validation failures raise ErrorCode::Config.
RunConfig parse_config(std::istream& in, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& file, const std::vector<std::string>& overrides = {});
RunConfig default_config(const std::vector<std::string>& overrides = {});

void validate(const RunConfig& cfg);

std::vector<double> beta_grid(const ScanConfig& scan);
std::vector<double> theta_grid(const ScanConfig& scan);

LoopPath build_path(const RunConfig& cfg);
// Latitude loops with the configured sample count and duration.
PathFamily latitude_family(const RunConfig& cfg);

}  // namespace ptgp::cli
