#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riclink/commands.hpp"

namespace {

using nlohmann::json;

// Sweep/theory flags; unset options leave the config file values alone.
struct GridFlags {
  std::string config_path;
  std::string scheme;
  std::vector<int> m;
  std::string ebn0;
  std::vector<int> diversity;
  std::vector<std::string> k;
  std::vector<std::string> k_db;
  std::string model;
  int n_scatterers = 0;
  double los_phase = 0.0;
  std::uint64_t min_errors = 0;
  std::uint64_t max_bits = 0;
  std::uint64_t batch_bits = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool theory = false;
};

void add_grid_options(CLI::App& cmd, GridFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON config file; flags override");
  cmd.add_option("--scheme", f.scheme, "psk or qam")
      ->check(CLI::IsMember({"psk", "qam"}));
  cmd.add_option("--m", f.m, "constellation sizes (powers of 2)");
  cmd.add_option("--ebn0", f.ebn0, "Eb/N0 in dB: value, a,b,c or start:stop:step");
  cmd.add_option("--diversity", f.diversity, "diversity orders (L >= 1)");
  const auto k_opt =
      cmd.add_option("--k", f.k, "Rician K factors, linear ('inf' for AWGN)");
  cmd.add_option("--k-db", f.k_db, "Rician K factors in dB")->excludes(k_opt);
  cmd.add_option("--model", f.model, "fading model: gaussian or finite")
      ->check(CLI::IsMember({"gaussian", "finite"}));
  cmd.add_option("--n-scatterers", f.n_scatterers, "scatterer count (finite model)");
  cmd.add_option("--los-phase", f.los_phase, "LOS phase in radians");
  cmd.add_option("--min-errors", f.min_errors, "stop after this many bit errors");
  cmd.add_option("--max-bits", f.max_bits, "bit budget per cell");
  cmd.add_option("--batch-bits", f.batch_bits, "bits per work block");
  cmd.add_option("--seed", f.seed, "master seed");
  cmd.add_option("--out", f.out, "output CSV path (default stdout)");
}

json load_base(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw riclink::ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw riclink::ConfigError("config file '" + path + "': " + e.what());
  }
}

riclink::SweepConfig merge_config(const CLI::App& cmd, const GridFlags& f) {
  json j = load_base(f.config_path);
  if (!j.is_object()) throw riclink::ConfigError("config root must be a JSON object");
  const auto given = [&](const std::string& name) {
    return cmd.count(name) > 0;
  };
  if (given("--scheme") || given("--m")) j.erase("modulations");
  if (given("--scheme")) j["scheme"] = f.scheme;
  if (given("--m")) j["m"] = f.m;
  if (given("--ebn0")) j["ebn0"] = f.ebn0;
  if (given("--diversity")) j["diversity"] = f.diversity;
  if (given("--k")) {
    j["k"] = f.k;
    j.erase("k_db");
  }
  if (given("--k-db")) {
    j["k_db"] = f.k_db;
    j.erase("k");
  }
  if (given("--model")) j["model"] = f.model;
  if (given("--n-scatterers")) j["n_scatterers"] = f.n_scatterers;
  if (given("--los-phase")) j["los_phase"] = f.los_phase;
  if (given("--min-errors")) j["stop"]["min_bit_errors"] = f.min_errors;
  if (given("--max-bits")) j["stop"]["max_bits"] = f.max_bits;
  if (given("--batch-bits")) j["stop"]["batch_bits"] = f.batch_bits;
  if (given("--seed")) j["seed"] = f.seed;
  if (given("--out")) j["output"] = f.out;
  const CLI::Option* theory_opt = cmd.get_option_no_throw("--theory");
  if (theory_opt && theory_opt->count() > 0) j["theory"] = true;
  return riclink::parse_config(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "riclink: Monte Carlo BER of M-ary PSK/QAM over Rician fading with "
      "MRC diversity"};
  app.require_subcommand(1);

  GridFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "run a simulation grid, emit CSV");
  add_grid_options(*sweep, sweep_flags);
  sweep->add_flag("--theory", sweep_flags.theory,
                  "interleave semi-analytic reference rows");

  GridFlags theory_flags;
  CLI::App* theory =
      app.add_subcommand("theory", "emit semi-analytic reference rows only");
  add_grid_options(*theory, theory_flags);

  std::string cons_scheme;
  int cons_m = 0;
  double cons_offset = 0.0;
  std::string cons_out;
  CLI::App* cons = app.add_subcommand("constellation", "dump points as CSV");
  cons->add_option("scheme", cons_scheme, "psk or qam")->required();
  cons->add_option("m", cons_m, "constellation size")->required();
  const auto offset_opt =
      cons->add_option("phase_offset", cons_offset, "PSK phase offset in radians");
  cons->add_option("--out", cons_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return riclink::cmd_sweep(merge_config(*sweep, sweep_flags), std::cerr);
    if (theory->parsed())
      return riclink::cmd_theory(merge_config(*theory, theory_flags), std::cerr);
    std::optional<double> offset;
    if (offset_opt->count() > 0) offset = cons_offset;
    return riclink::cmd_constellation(cons_scheme, cons_m, offset, cons_out,
                                      std::cerr);
  } catch (const riclink::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
