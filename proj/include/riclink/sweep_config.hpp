#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "riclink/montecarlo.hpp"

namespace riclink {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid of simulation cells. Every axis must be non-empty; k_factor is
// stored linear (dB inputs are converted at parse time) and has no
// default: leaving it out of a config is an error.
struct SweepConfig {
  std::vector<std::pair<Scheme, int>> modulations;
  std::vector<double> ebn0_db;
  std::vector<int> diversity;
  std::vector<double> k_factor;
  FadingModel model = FadingModel::GaussianLimit;
  int n_scatterers = 16;
  double los_phase = 0.0;
  StoppingRule stop;
  std::uint64_t seed = 1;
  std::string output;  // empty = stdout
  bool with_theory = false;

  bool operator==(const SweepConfig&) const = default;
};

// "start:stop:step" (inclusive of stop, step > 0) or "a,b,c".
std::vector<double> parse_grid(const std::string& text);

SweepConfig parse_config(const nlohmann::json& j);
SweepConfig parse_config_file(const std::string& path);
nlohmann::json to_json(const SweepConfig& config);

void validate(const SweepConfig& config);

// Cartesian product of the axes, ordered by (scheme, m, diversity,
// ebn0_db, k_factor). This is also the CSV row order.
std::vector<SimPoint> expand_cells(const SweepConfig& config);

}  // namespace riclink
