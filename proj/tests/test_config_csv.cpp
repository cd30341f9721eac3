#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "riclink/commands.hpp"
#include "riclink/csv.hpp"
#include "riclink/sweep_config.hpp"

using namespace riclink;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_fields(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

struct TempFile {
  std::string path;
  explicit TempFile(const char* name)
      : path(std::string("riclink_test_") + name + ".csv") {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("grid grammar") {
  CHECK(parse_grid("0:10:1") ==
        std::vector<double>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(parse_grid("0:10:3") == std::vector<double>{0, 3, 6, 9});
  CHECK(parse_grid("2:2:1") == std::vector<double>{2});
  CHECK(parse_grid("1,2.5,4") == std::vector<double>{1, 2.5, 4});
  CHECK(parse_grid("5") == std::vector<double>{5});
  CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_grid("0:10:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("10:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_grid("a,b"), ConfigError);
}

TEST_CASE("flag-shaped config expands to the documented cell count") {
  const json j = {{"scheme", "psk"}, {"m", 16},        {"ebn0", "0:10:1"},
                  {"diversity", 5},  {"k", 5},         {"seed", 42}};
  const SweepConfig cfg = parse_config(j);
  CHECK(cfg.seed == 42);
  CHECK(expand_cells(cfg).size() == 11);

  const json two = {{"scheme", "qam"},
                    {"m", json::array({256, 512})},
                    {"ebn0", "0:10:1"},
                    {"diversity", json::array({4})},
                    {"k", 5}};
  CHECK(expand_cells(parse_config(two)).size() == 22);
}

TEST_CASE("k factor is required and unambiguous") {
  json j = {{"scheme", "psk"}, {"m", 16}, {"ebn0", 5}, {"diversity", 1}};
  bool threw = false;
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("k_factor required") != std::string::npos);
  }
  CHECK(threw);
  j["k"] = 5;
  j["k_db"] = 7;
  CHECK_THROWS_AS(parse_config(j), ConfigError);
  j.erase("k");
  const SweepConfig db = parse_config(j);
  CHECK(db.k_factor == std::vector<double>{std::pow(10.0, 0.7)});
  j["k_db"] = "inf";
  CHECK(std::isinf(parse_config(j).k_factor[0]));
  j.erase("k_db");
  j["k"] = "inf";
  CHECK(std::isinf(parse_config(j).k_factor[0]));
}

TEST_CASE("config validation rejects malformed grids") {
  const json base = {{"scheme", "psk"}, {"m", 16}, {"ebn0", 5}, {"diversity", 1},
                     {"k", 5}};
  {
    json j = base;
    j["m"] = 12;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  {
    json j = base;
    j["diversity"] = 0;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  {
    json j = base;
    j["k"] = -2;
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  {
    json j = base;
    j["ebn0"] = json::array();
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  {
    json j = base;
    j["typo_key"] = 1;
    bool threw = false;
    try {
      parse_config(j);
    } catch (const ConfigError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }
    CHECK(threw);
  }
  {
    json j = base;
    j["model"] = "finite";
    j["k"] = "inf";
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
  {
    json j = base;
    j["stop"] = {{"batch_bits", 0}};
    CHECK_THROWS_AS(parse_config(j), ConfigError);
  }
}

TEST_CASE("mixed modulation lists") {
  const json j = {{"modulations", json::array({json::array({"psk", 16}),
                                               json::array({"qam", 64})})},
                  {"ebn0", json::array({0, 5})},
                  {"diversity", 1},
                  {"k", 0}};
  const auto cells = expand_cells(parse_config(j));
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].scheme == Scheme::Psk);
  CHECK(cells[2].scheme == Scheme::Qam);
  CHECK(cells[2].m == 64);
}

TEST_CASE("configs round-trip through json") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Psk, 16}, {Scheme::Qam, 64}};
  cfg.ebn0_db = {0.0, 2.5, 5.0};
  cfg.diversity = {1, 4};
  cfg.k_factor = {0.0, 5.0, std::numeric_limits<double>::infinity()};
  cfg.model = FadingModel::GaussianLimit;
  cfg.n_scatterers = 32;
  cfg.los_phase = 0.25;
  cfg.stop = {500, 2'000'000, 40'000};
  cfg.seed = 987654321;
  cfg.output = "out.csv";
  cfg.with_theory = true;
  CHECK(parse_config(to_json(cfg)) == cfg);
  // and through an actual serialization
  const json reread = json::parse(to_json(cfg).dump());
  CHECK(parse_config(reread) == cfg);
}

TEST_CASE("cells come out sorted by scheme, m, diversity, ebn0, k") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Qam, 64}, {Scheme::Psk, 16}, {Scheme::Psk, 4}};
  cfg.ebn0_db = {5.0, 0.0};
  cfg.diversity = {2, 1};
  cfg.k_factor = {5.0, 0.0};
  const auto cells = expand_cells(cfg);
  REQUIRE(cells.size() == 24);
  CHECK(cells[0].scheme == Scheme::Psk);
  CHECK(cells[0].m == 4);
  CHECK(cells[0].diversity == 1);
  CHECK(cells[0].ebn0_db == 0.0);
  CHECK(cells[0].channel.k_factor == 0.0);
  CHECK(cells[1].channel.k_factor == 5.0);
  CHECK(cells[2].ebn0_db == 5.0);
  CHECK(cells[4].diversity == 2);
  CHECK(cells[8].m == 16);
  CHECK(cells[16].scheme == Scheme::Qam);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].seed == cfg.seed);
    CHECK(cells[i].stop == cfg.stop);
  }
}

TEST_CASE("empty axes are configuration errors") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Psk, 4}};
  cfg.ebn0_db = {};
  cfg.diversity = {1};
  cfg.k_factor = {1.0};
  CHECK_THROWS_AS(expand_cells(cfg), ConfigError);
  cfg.ebn0_db = {1.0};
  cfg.k_factor = {};
  CHECK_THROWS_AS(expand_cells(cfg), ConfigError);
}

TEST_CASE("csv header and row shapes") {
  std::ostringstream out;
  write_csv_header(out);
  CHECK(out.str() ==
        "# riclink-csv v1\n"
        "scheme,m,ebn0_db,diversity,k_factor,model,bits,bit_errors,ber,"
        "ci_low,ci_high,seed,source\n");

  SimPoint p;
  p.scheme = Scheme::Qam;
  p.m = 64;
  p.ebn0_db = 2.5;
  p.diversity = 3;
  p.channel = {std::numeric_limits<double>::infinity(),
               FadingModel::GaussianLimit};
  p.seed = 42;
  BerEstimate est;
  est.bits_sent = 1200;
  est.bit_errors = 30;
  est.ber = 0.025;
  est.ci_low = 0.017;
  est.ci_high = 0.035;
  std::ostringstream row;
  write_sim_row(row, p, est);
  CHECK(row.str() ==
        "qam,64,2.5,3,inf,gaussian,1200,30,0.025,0.017,0.035,42,sim\n");

  OracleEstimate ref;
  ref.ber = 0.0201;
  ref.ber_std_error = 0.0;
  std::ostringstream trow;
  write_theory_row(trow, p, ref);
  CHECK(trow.str() == "qam,64,2.5,3,inf,gaussian,,,0.0201,0.0201,0.0201,42,theory\n");
  CHECK(count_fields(trow.str()) == 13);
}

TEST_CASE("constellation csv lists points with binary labels") {
  std::ostringstream out;
  write_constellation_csv(out, build_psk(2));
  CHECK(out.str() ==
        "# riclink-csv v1\n"
        "index,bits,i,q,amp,phase\n"
        "0,0,1,0,1,0\n"
        "1,1,-1,1.22464679915e-16,1,3.14159265359\n");
}

TEST_CASE("sweep command writes sorted, repeatable csv") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Psk, 4}};
  cfg.ebn0_db = {3.0, 0.0};
  cfg.diversity = {1};
  cfg.k_factor = {1.0};
  cfg.stop = {30, 50'000, 10'000};
  cfg.seed = 4242;
  TempFile a("sweep_a"), b("sweep_b");
  std::ostringstream diag;
  cfg.output = a.path;
  REQUIRE(cmd_sweep(cfg, diag) == 0);
  cfg.output = b.path;
  REQUIRE(cmd_sweep(cfg, diag) == 0);
  const std::string text = slurp(a.path);
  CHECK(text == slurp(b.path));
  CHECK(diag.str().empty());

  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "# riclink-csv v1");
  std::getline(lines, line);  // column header
  std::getline(lines, line);
  CHECK(line.substr(0, 8) == "psk,4,0,");
  CHECK(count_fields(line) == 13);
  std::getline(lines, line);
  CHECK(line.substr(0, 8) == "psk,4,3,");
  CHECK(!std::getline(lines, line));
  CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("sweep command reports unwritable outputs") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Psk, 2}};
  cfg.ebn0_db = {0.0};
  cfg.diversity = {1};
  cfg.k_factor = {1.0};
  cfg.stop = {1, 1'000, 1'000};
  cfg.output = "no_such_dir/riclink.csv";
  std::ostringstream diag;
  CHECK(cmd_sweep(cfg, diag) != 0);
  CHECK(diag.str().find("no_such_dir") != std::string::npos);
}

TEST_CASE("sweep with theory interleaves reference rows") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Psk, 4}};
  cfg.ebn0_db = {0.0, 3.0};
  cfg.diversity = {1};
  cfg.k_factor = {1.0};
  cfg.stop = {30, 50'000, 10'000};
  cfg.seed = 11;
  cfg.with_theory = true;
  TempFile f("sweep_theory");
  cfg.output = f.path;
  std::ostringstream diag;
  REQUIRE(cmd_sweep(cfg, diag) == 0);
  std::istringstream lines(slurp(f.path));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].ends_with(",sim"));
  CHECK(rows[1].ends_with(",theory"));
  CHECK(rows[1].find(",,") != std::string::npos);
  CHECK(rows[2].ends_with(",sim"));
  CHECK(rows[3].ends_with(",theory"));
}

TEST_CASE("theory command skips unsupported cells with a warning") {
  SweepConfig cfg;
  cfg.modulations = {{Scheme::Qam, 32}};
  cfg.ebn0_db = {0.0, 5.0};
  cfg.diversity = {1};
  cfg.k_factor = {0.0};
  TempFile f("theory_skip");
  cfg.output = f.path;
  std::ostringstream diag;
  CHECK(cmd_theory(cfg, diag) == 0);
  CHECK(diag.str().find("warning") != std::string::npos);
  std::istringstream lines(slurp(f.path));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);  // version comment + column header, no data rows
}

TEST_CASE("constellation command emits the requested offset") {
  TempFile f("cons");
  std::ostringstream diag;
  REQUIRE(cmd_constellation("psk", 16, 0.19635, f.path, diag) == 0);
  std::istringstream lines(slurp(f.path));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  int rows = 0;
  std::string first;
  while (std::getline(lines, line)) {
    if (rows == 0) first = line;
    ++rows;
  }
  CHECK(rows == 16);
  CHECK(first == "0,0000,0.980785190827,0.195090772344,1,0.19635");

  CHECK(cmd_constellation("qam", 64, std::nullopt, f.path, diag) == 0);
  CHECK(cmd_constellation("qam", 64, 0.1, f.path, diag) != 0);
  CHECK(cmd_constellation("psk", 12, std::nullopt, f.path, diag) != 0);
}
