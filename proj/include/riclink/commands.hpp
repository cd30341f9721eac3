#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "riclink/sweep_config.hpp"

namespace riclink {

// Each command returns a process exit code and writes warnings and errors
// to diag. Result CSV goes to config.output (stdout when empty).

int cmd_sweep(const SweepConfig& config, std::ostream& diag);

// Oracle rows only; cells without a closed-form reference (cross and
// rectangular QAM) are skipped with a warning.
int cmd_theory(const SweepConfig& config, std::ostream& diag);

int cmd_constellation(const std::string& scheme, int m,
                      std::optional<double> phase_offset,
                      const std::string& out_path, std::ostream& diag);

}  // namespace riclink
