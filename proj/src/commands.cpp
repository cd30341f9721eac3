#include "riclink/commands.hpp"

#include <bit>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "riclink/csv.hpp"
#include "riclink/theory.hpp"

namespace riclink {

namespace {

constexpr std::uint64_t kOracleStream = 3;

std::string describe_cell(const SimPoint& p) {
  return to_string(p.scheme) + " m=" + std::to_string(p.m) +
         " ebn0=" + format_compact(p.ebn0_db) + "dB L=" +
         std::to_string(p.diversity) + " k=" + format_compact(p.channel.k_factor);
}

int emit(const std::string& body, const std::string& path, std::ostream& diag) {
  if (path.empty()) {
    std::cout << body;
    return std::cout ? 0 : 1;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    diag << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  out << body;
  out.flush();
  if (!out) {
    diag << "error: write to '" << path << "' failed\n";
    return 1;
  }
  return 0;
}

// A theory curve is shared by every cell that differs only in Eb/N0; the
// shared gain draws keep each curve monotone.
using CurveKey = std::tuple<Scheme, int, int, double>;

OracleOptions oracle_options(const SweepConfig& cfg, const SimPoint& p) {
  OracleOptions opt;
  opt.seed = derive_seed({cfg.seed, kOracleStream,
                          p.scheme == Scheme::Psk ? 0ull : 1ull,
                          static_cast<std::uint64_t>(p.m),
                          static_cast<std::uint64_t>(p.diversity),
                          std::bit_cast<std::uint64_t>(p.channel.k_factor)});
  return opt;
}

// Maps each supported curve group to its oracle values, aligned with the
// group's sorted Eb/N0 grid; unsupported groups get one warning.
std::map<CurveKey, TheoryCurve> compute_curves(const SweepConfig& cfg,
                                               const std::vector<SimPoint>& cells,
                                               std::ostream& diag) {
  std::map<CurveKey, std::vector<double>> grids;
  std::map<CurveKey, SimPoint> reps;
  for (const SimPoint& p : cells) {
    const CurveKey key{p.scheme, p.m, p.diversity, p.channel.k_factor};
    grids[key].push_back(p.ebn0_db);
    reps.emplace(key, p);
  }
  std::map<CurveKey, TheoryCurve> curves;
  for (const auto& [key, grid] : grids) {
    const SimPoint& rep = reps.at(key);
    try {
      curves[key] = theory_curve(rep.scheme, rep.m, rep.diversity, rep.channel,
                                 grid, oracle_options(cfg, rep));
    } catch (const UnsupportedModulation& e) {
      diag << "warning: no reference curve for " << to_string(rep.scheme)
           << " m=" << rep.m << " (" << e.what() << "); skipping theory rows\n";
    }
  }
  return curves;
}

const OracleEstimate* curve_value(const std::map<CurveKey, TheoryCurve>& curves,
                                  const SimPoint& p) {
  const auto it =
      curves.find(CurveKey{p.scheme, p.m, p.diversity, p.channel.k_factor});
  if (it == curves.end()) return nullptr;
  const TheoryCurve& curve = it->second;
  for (std::size_t i = 0; i < curve.ebn0_db.size(); ++i)
    if (curve.ebn0_db[i] == p.ebn0_db) return &curve.points[i];
  return nullptr;
}

}  // namespace

int cmd_sweep(const SweepConfig& config, std::ostream& diag) {
  std::vector<SimPoint> cells;
  try {
    cells = expand_cells(config);
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }

  std::map<CurveKey, TheoryCurve> curves;
  if (config.with_theory) curves = compute_curves(config, cells, diag);

  std::ostringstream body;
  write_csv_header(body);
  for (const SimPoint& p : cells) {
    BerEstimate est;
    try {
      est = run_point(p);
    } catch (const std::exception& e) {
      diag << "error: cell " << describe_cell(p) << " failed: " << e.what() << '\n';
      return 1;
    }
    write_sim_row(body, p, est);
    if (config.with_theory)
      if (const OracleEstimate* ref = curve_value(curves, p))
        write_theory_row(body, p, *ref);
  }
  return emit(body.str(), config.output, diag);
}

int cmd_theory(const SweepConfig& config, std::ostream& diag) {
  std::vector<SimPoint> cells;
  try {
    cells = expand_cells(config);
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
  const std::map<CurveKey, TheoryCurve> curves = compute_curves(config, cells, diag);

  std::ostringstream body;
  write_csv_header(body);
  for (const SimPoint& p : cells)
    if (const OracleEstimate* ref = curve_value(curves, p))
      write_theory_row(body, p, *ref);
  return emit(body.str(), config.output, diag);
}

int cmd_constellation(const std::string& scheme, int m,
                      std::optional<double> phase_offset,
                      const std::string& out_path, std::ostream& diag) {
  Constellation c;
  try {
    const Scheme s = scheme_from_string(scheme);
    if (s == Scheme::Qam && phase_offset)
      throw std::invalid_argument("phase offset applies to psk only");
    c = s == Scheme::Psk ? build_psk(m, phase_offset.value_or(0.0)) : build_qam(m);
  } catch (const std::invalid_argument& e) {
    diag << "error: " << e.what() << '\n';
    return 1;
  }
  std::ostringstream body;
  write_constellation_csv(body, c);
  return emit(body.str(), out_path, diag);
}

}  // namespace riclink
