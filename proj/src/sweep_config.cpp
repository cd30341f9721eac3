#include "riclink/sweep_config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace riclink {

using nlohmann::json;

namespace {

double parse_number(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(where + ": '" + text + "' is not a number");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
    ++used;
  if (used != text.size())
    throw ConfigError(where + ": trailing characters in '" + text + "'");
  return v;
}

double number_of(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_number(v.get<std::string>(), where);
  throw ConfigError(where + ": expected a number");
}

std::vector<double> number_list_of(const json& v, const std::string& where) {
  std::vector<double> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(where + ": list must be non-empty");
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(number_of(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }
  if (v.is_string()) return parse_grid(v.get<std::string>());
  out.push_back(number_of(v, where));
  return out;
}

int int_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

std::vector<int> int_list_of(const json& v, const std::string& where) {
  std::vector<int> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(where + ": list must be non-empty");
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(int_of(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
  }
  out.push_back(int_of(v, where));
  return out;
}

json k_to_json(double k) {
  if (std::isinf(k)) return json("inf");
  return json(k);
}

bool valid_order(Scheme scheme, int m) {
  const int lo = scheme == Scheme::Psk ? 2 : 4;
  return m >= lo && m <= 1024 && (m & (m - 1)) == 0;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
  };
  if (text.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3)
      throw ConfigError("grid '" + text + "': expected start:stop:step");
    const double start = parse_number(parts[0], "grid start");
    const double stop = parse_number(parts[1], "grid stop");
    const double step = parse_number(parts[2], "grid step");
    if (!(step > 0.0)) throw ConfigError("grid '" + text + "': step must be > 0");
    if (stop < start) throw ConfigError("grid '" + text + "': stop < start");
    const auto count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = start + step * i;
    return out;
  }
  std::vector<double> out;
  for (const std::string& part : split(text, ','))
    out.push_back(parse_number(part, "grid value"));
  if (out.empty()) throw ConfigError("grid '" + text + "' is empty");
  return out;
}

SweepConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  static const std::set<std::string> known = {
      "scheme", "m",   "modulations",  "ebn0",   "diversity", "k",
      "k_db",   "model", "n_scatterers", "los_phase", "stop",   "seed",
      "output", "theory"};
  for (const auto& [key, unused] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");

  SweepConfig cfg;

  if (j.contains("modulations")) {
    if (j.contains("scheme") || j.contains("m"))
      throw ConfigError("give either 'modulations' or 'scheme'+'m', not both");
    const json& mods = j.at("modulations");
    if (!mods.is_array() || mods.empty())
      throw ConfigError("'modulations' must be a non-empty list of [scheme, m]");
    for (std::size_t i = 0; i < mods.size(); ++i) {
      const json& pair = mods[i];
      const std::string where = "modulations[" + std::to_string(i) + "]";
      if (!pair.is_array() || pair.size() != 2)
        throw ConfigError(where + ": expected [scheme, m]");
      if (!pair[0].is_string()) throw ConfigError(where + ": scheme must be a string");
      Scheme scheme;
      try {
        scheme = scheme_from_string(pair[0].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
      }
      cfg.modulations.emplace_back(scheme, int_of(pair[1], where + ".m"));
    }
  } else {
    if (!j.contains("scheme")) throw ConfigError("missing 'scheme' (psk or qam)");
    if (!j.contains("m")) throw ConfigError("missing 'm' (constellation size)");
    if (!j.at("scheme").is_string()) throw ConfigError("'scheme' must be a string");
    Scheme scheme;
    try {
      scheme = scheme_from_string(j.at("scheme").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'scheme': ") + e.what());
    }
    for (int m : int_list_of(j.at("m"), "m")) cfg.modulations.emplace_back(scheme, m);
  }

  if (!j.contains("ebn0")) throw ConfigError("missing 'ebn0' (dB value, list, or grid)");
  cfg.ebn0_db = number_list_of(j.at("ebn0"), "ebn0");

  if (!j.contains("diversity"))
    throw ConfigError("missing 'diversity' (branch count or list)");
  cfg.diversity = int_list_of(j.at("diversity"), "diversity");

  const bool has_k = j.contains("k");
  const bool has_k_db = j.contains("k_db");
  if (has_k == has_k_db)
    throw ConfigError(has_k
                          ? "give either 'k' (linear) or 'k_db', not both"
                          : "k_factor required (no default is assumed); set 'k' "
                            "(linear) or 'k_db'");
  if (has_k) {
    cfg.k_factor = number_list_of(j.at("k"), "k");
  } else {
    for (double kdb : number_list_of(j.at("k_db"), "k_db"))
      cfg.k_factor.push_back(std::isinf(kdb) && kdb > 0.0
                                 ? kdb
                                 : std::pow(10.0, kdb / 10.0));
  }

  if (j.contains("model")) {
    if (!j.at("model").is_string()) throw ConfigError("'model' must be a string");
    try {
      cfg.model = fading_model_from_string(j.at("model").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("'model': ") + e.what());
    }
  }
  if (j.contains("n_scatterers"))
    cfg.n_scatterers = int_of(j.at("n_scatterers"), "n_scatterers");
  if (j.contains("los_phase"))
    cfg.los_phase = number_of(j.at("los_phase"), "los_phase");

  if (j.contains("stop")) {
    const json& s = j.at("stop");
    if (!s.is_object()) throw ConfigError("'stop' must be an object");
    static const std::set<std::string> stop_keys = {"min_bit_errors", "max_bits",
                                                    "batch_bits"};
    for (const auto& [key, unused] : s.items())
      if (!stop_keys.count(key)) throw ConfigError("unknown stop key '" + key + "'");
    const auto u64_of = [](const json& v, const std::string& where) {
      if (!v.is_number_integer() && !v.is_number_unsigned())
        throw ConfigError(where + ": expected an integer");
      if (v.is_number_integer() && v.get<std::int64_t>() < 0)
        throw ConfigError(where + ": must be >= 0");
      return v.get<std::uint64_t>();
    };
    if (s.contains("min_bit_errors"))
      cfg.stop.min_bit_errors = u64_of(s.at("min_bit_errors"), "stop.min_bit_errors");
    if (s.contains("max_bits")) cfg.stop.max_bits = u64_of(s.at("max_bits"), "stop.max_bits");
    if (s.contains("batch_bits"))
      cfg.stop.batch_bits = u64_of(s.at("batch_bits"), "stop.batch_bits");
  }

  if (j.contains("seed")) {
    const json& v = j.at("seed");
    if (v.is_number_unsigned()) {
      cfg.seed = v.get<std::uint64_t>();
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      cfg.seed = static_cast<std::uint64_t>(v.get<std::int64_t>());
    } else {
      throw ConfigError("'seed': expected a non-negative integer");
    }
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) throw ConfigError("'output' must be a string");
    cfg.output = j.at("output").get<std::string>();
  }
  if (j.contains("theory")) {
    if (!j.at("theory").is_boolean()) throw ConfigError("'theory' must be a boolean");
    cfg.with_theory = j.at("theory").get<bool>();
  }

  validate(cfg);
  return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return parse_config(j);
}

json to_json(const SweepConfig& config) {
  json mods = json::array();
  for (const auto& [scheme, m] : config.modulations)
    mods.push_back(json::array({to_string(scheme), m}));
  json k = json::array();
  for (double v : config.k_factor) k.push_back(k_to_json(v));
  return json{{"modulations", mods},
              {"ebn0", config.ebn0_db},
              {"diversity", config.diversity},
              {"k", k},
              {"model", to_string(config.model)},
              {"n_scatterers", config.n_scatterers},
              {"los_phase", config.los_phase},
              {"stop",
               {{"min_bit_errors", config.stop.min_bit_errors},
                {"max_bits", config.stop.max_bits},
                {"batch_bits", config.stop.batch_bits}}},
              {"seed", config.seed},
              {"output", config.output},
              {"theory", config.with_theory}};
}

void validate(const SweepConfig& config) {
  if (config.modulations.empty()) throw ConfigError("modulation list is empty");
  if (config.ebn0_db.empty()) throw ConfigError("ebn0 list is empty");
  if (config.diversity.empty()) throw ConfigError("diversity list is empty");
  if (config.k_factor.empty()) throw ConfigError("k_factor list is empty");
  for (const auto& [scheme, m] : config.modulations)
    if (!valid_order(scheme, m))
      throw ConfigError(to_string(scheme) + " order " + std::to_string(m) +
                        " is not a power of 2 in [" +
                        (scheme == Scheme::Psk ? "2" : "4") + ", 1024]");
  for (double e : config.ebn0_db)
    if (!std::isfinite(e)) throw ConfigError("ebn0 values must be finite");
  for (int d : config.diversity)
    if (d < 1) throw ConfigError("diversity must be >= 1, got " + std::to_string(d));
  for (double k : config.k_factor) {
    RicianParams p{k, config.model, config.n_scatterers, config.los_phase};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  try {
    config.stop.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<SimPoint> expand_cells(const SweepConfig& config) {
  validate(config);
  auto mods = config.modulations;
  auto ebn0 = config.ebn0_db;
  auto div = config.diversity;
  auto ks = config.k_factor;
  std::sort(mods.begin(), mods.end());
  mods.erase(std::unique(mods.begin(), mods.end()), mods.end());
  std::sort(ebn0.begin(), ebn0.end());
  ebn0.erase(std::unique(ebn0.begin(), ebn0.end()), ebn0.end());
  std::sort(div.begin(), div.end());
  div.erase(std::unique(div.begin(), div.end()), div.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<SimPoint> cells;
  cells.reserve(mods.size() * div.size() * ebn0.size() * ks.size());
  for (const auto& [scheme, m] : mods)
    for (int d : div)
      for (double e : ebn0)
        for (double k : ks) {
          SimPoint p;
          p.scheme = scheme;
          p.m = m;
          p.ebn0_db = e;
          p.diversity = d;
          p.channel = {k, config.model, config.n_scatterers, config.los_phase};
          p.stop = config.stop;
          p.seed = config.seed;
          cells.push_back(p);
        }
  return cells;
}

}  // namespace riclink
