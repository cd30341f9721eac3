#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "riclink/channel.hpp"
#include "riclink/constellation.hpp"

namespace riclink {

// Simulation stops at the first block boundary where bit_errors >=
// min_bit_errors, or once the max_bits budget is spent, whichever first.
struct StoppingRule {
  std::uint64_t min_bit_errors = 200;
  std::uint64_t max_bits = 10'000'000;
  std::uint64_t batch_bits = 20'000;

  void validate() const;
  bool operator==(const StoppingRule&) const = default;
};

struct SimPoint {
  Scheme scheme = Scheme::Psk;
  int m = 2;
  double ebn0_db = 0.0;
  int diversity = 1;
  RicianParams channel;
  StoppingRule stop;
  std::uint64_t seed = 1;  // master seed; per-cell streams derive from it
};

struct BerEstimate {
  std::uint64_t bits_sent = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t symbols_sent = 0;
  std::uint64_t symbol_errors = 0;
  double ber = 0.0;
  double ser = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

double ber_of(std::uint64_t bit_errors, std::uint64_t bits_sent);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_ci(std::uint64_t errors, std::uint64_t trials,
                                    double confidence);

// Number of parallel block workers: RICLINK_WORKERS if set to a positive
// integer, hardware concurrency otherwise. Re-read on every call.
int worker_count();

std::uint64_t cell_seed(const SimPoint& point);

// The estimate is a pure function of the point; the worker count changes
// only the wall time, never the counters.
BerEstimate run_point(const SimPoint& point);

struct SweepConfig;

struct SweepResult {
  SimPoint point;
  BerEstimate estimate;
};

std::vector<SweepResult> run_sweep(const SweepConfig& config);

}  // namespace riclink
