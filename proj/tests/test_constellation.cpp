#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "riclink/constellation.hpp"
#include "riclink/rng.hpp"

using namespace riclink;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

const std::vector<int> kPskOrders = {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
const std::vector<int> kQamOrders = {4, 8, 16, 32, 64, 128, 256, 512, 1024};

std::vector<Constellation> all_constellations() {
  std::vector<Constellation> out;
  for (int m : kPskOrders) out.push_back(build_psk(m));
  for (int m : kQamOrders) out.push_back(build_qam(m));
  return out;
}

}  // namespace

TEST_CASE("gray code round-trips and steps one bit at a time") {
  for (std::uint32_t i = 0; i < 1024; ++i) {
    CHECK(gray_decode(gray_code(i)) == i);
    if (i > 0) CHECK(std::popcount(gray_code(i) ^ gray_code(i - 1)) == 1);
  }
}

TEST_CASE("orders outside the supported range are rejected") {
  CHECK_THROWS_AS(build_psk(3), std::invalid_argument);
  CHECK_THROWS_AS(build_psk(0), std::invalid_argument);
  CHECK_THROWS_AS(build_psk(2048), std::invalid_argument);
  CHECK_THROWS_AS(build_qam(2), std::invalid_argument);
  CHECK_THROWS_AS(build_qam(48), std::invalid_argument);
  CHECK_THROWS_AS(build_qam(2048), std::invalid_argument);
}

TEST_CASE("every constellation has unit average energy") {
  for (const Constellation& c : all_constellations()) {
    CAPTURE(to_string(c.scheme));
    CAPTURE(c.size);
    CHECK(std::abs(c.average_energy() - 1.0) < 1e-9);
  }
}

TEST_CASE("labels are a bijection and points are distinct") {
  for (const Constellation& c : all_constellations()) {
    std::set<std::uint32_t> labels;
    std::set<std::pair<double, double>> coords;
    for (int k = 0; k < c.size; ++k) {
      labels.insert(c.label_of_index[k]);
      CHECK(c.index_of_label[c.label_of_index[k]] == k);
      coords.insert({c.points[k].real(), c.points[k].imag()});
    }
    CHECK(static_cast<int>(labels.size()) == c.size);
    CHECK(static_cast<int>(coords.size()) == c.size);
    CHECK(*labels.rbegin() == static_cast<std::uint32_t>(c.size) - 1);
  }
}

TEST_CASE("psk geometry: phases, min distance, first point offset") {
  for (int m : kPskOrders) {
    const Constellation c = build_psk(m);
    CHECK(std::abs(min_distance(c) - 2.0 * std::sin(kPi / m)) < 1e-12);
    for (int k = 0; k < m; ++k) {
      CHECK(std::abs(c.point(k).amp - 1.0) < 1e-12);
      double want = std::fmod(2.0 * kPi * k / m, 2.0 * kPi);
      const double got = c.point(k).phase;
      CHECK(std::abs(std::remainder(got - want, 2.0 * kPi)) < 1e-12);
    }
  }
  const Constellation tilted = build_psk(16, 0.19635);
  CHECK(tilted.point(0).phase == doctest::Approx(0.19635).epsilon(1e-12));
}

TEST_CASE("psk angular neighbors differ in one bit") {
  for (int m : kPskOrders) {
    if (m < 4) continue;
    const Constellation c = build_psk(m);
    for (int k = 0; k < m; ++k) {
      const std::uint32_t a = c.label_of_index[k];
      const std::uint32_t b = c.label_of_index[(k + 1) % m];
      CHECK(std::popcount(a ^ b) == 1);
    }
  }
}

TEST_CASE("16-qam uses the odd-level grid scaled by 1/sqrt(10)") {
  const Constellation c = build_qam(16);
  const double s = 1.0 / std::sqrt(10.0);
  std::set<int> levels;
  for (int k = 0; k < 16; ++k) {
    const double li = c.points[k].real() / s;
    const double lq = c.points[k].imag() / s;
    CHECK(std::abs(li - std::round(li)) < 1e-12);
    CHECK(std::abs(lq - std::round(lq)) < 1e-12);
    levels.insert(static_cast<int>(std::round(li)));
  }
  CHECK(levels == std::set<int>{-3, -1, 1, 3});
}

TEST_CASE("64-qam fills an 8x8 grid") {
  const Constellation c = build_qam(64);
  CHECK(c.grid_cols == 8);
  CHECK(c.grid_rows == 8);
  std::set<double> re, im;
  for (int k = 0; k < 64; ++k) {
    re.insert(c.points[k].real());
    im.insert(c.points[k].imag());
  }
  CHECK(re.size() == 8);
  CHECK(im.size() == 8);
}

TEST_CASE("square qam grid neighbors differ in one bit") {
  for (int m : {4, 16, 64, 256, 1024}) {
    const Constellation c = build_qam(m);
    const int side = c.grid_cols;
    const auto at = [&](int col, int row) {
      return c.label_of_index[c.index_of_cell[static_cast<std::size_t>(col) * side +
                                              row]];
    };
    for (int col = 0; col < side; ++col)
      for (int row = 0; row < side; ++row) {
        if (col + 1 < side) CHECK(std::popcount(at(col, row) ^ at(col + 1, row)) == 1);
        if (row + 1 < side) CHECK(std::popcount(at(col, row) ^ at(col, row + 1)) == 1);
      }
  }
}

TEST_CASE("cross constellations have the documented shape") {
  // bounding square of side 3*2^((n-1)/2)/2 with square corner cuts
  for (int m : {32, 128, 512}) {
    const Constellation c = build_qam(m);
    const int side = c.grid_cols;
    CHECK(side * side > m);
    int used = 0;
    for (std::int32_t idx : c.index_of_cell) used += idx >= 0;
    CHECK(used == m);
    const int cut = (side * side - m) / 4;
    const int wing = static_cast<int>(std::round(std::sqrt(cut)));
    CHECK(wing * wing * 4 == side * side - m);
    // corners empty, edge midpoints occupied
    CHECK(c.index_of_cell[0] == -1);
    CHECK(c.index_of_cell[static_cast<std::size_t>(side) * side - 1] == -1);
    CHECK(c.index_of_cell[static_cast<std::size_t>(side / 2) * side] >= 0);
  }
  const Constellation r8 = build_qam(8);
  CHECK(r8.grid_cols == 4);
  CHECK(r8.grid_rows == 2);
}

TEST_CASE("bit mapping round-trips for every constellation") {
  RngStream rng(0xB17B17);
  for (const Constellation& c : all_constellations()) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(c.bits_per_symbol) * 64);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bits(1));
    const std::vector<int> symbols = map_bits(c, bits);
    REQUIRE(symbols.size() == 64);
    CHECK(demap_bits(c, symbols) == bits);
  }
}

TEST_CASE("mapping rejects ragged input and bad indices") {
  const Constellation c = build_psk(8);
  const std::vector<std::uint8_t> bits(7, 0);
  CHECK_THROWS_AS(map_bits(c, bits), std::invalid_argument);
  const std::vector<int> bad = {0, 8};
  CHECK_THROWS_AS(demap_bits(c, bad), std::domain_error);
}

TEST_CASE("nearest point detection and tie-breaking") {
  const Constellation bpsk = build_psk(2);
  CHECK(nearest_index(bpsk, Complex(0.3, 0.0)) == 0);
  CHECK(nearest_index(bpsk, Complex(-0.3, 0.2)) == 1);
  CHECK(nearest_index(bpsk, Complex(0.0, 0.0)) == 0);  // tie -> lowest index
  for (const Constellation& c : all_constellations())
    for (int k = 0; k < c.size; k += std::max(1, c.size / 17))
      CHECK(nearest_index(c, c.points[k]) == k);
}

TEST_CASE("fast slicing agrees with exhaustive search") {
  RngStream rng(0x511CE);
  for (const Constellation& c : all_constellations()) {
    CAPTURE(to_string(c.scheme));
    CAPTURE(c.size);
    for (int t = 0; t < 400; ++t) {
      const Complex z = 1.2 * rng.circular_gaussian();
      CHECK(slice_index(c, z) == nearest_index(c, z));
    }
  }
}

TEST_CASE("decisions are invariant to common positive scaling") {
  RngStream rng(0x5CA1E);
  const Constellation c = build_qam(16);
  for (int t = 0; t < 200; ++t) {
    const Complex z = 1.5 * rng.circular_gaussian();
    const int pick = nearest_index(c, z);
    for (double alpha : {0.25, 4.0}) {
      // argmin_k |a z - a p_k| computed against the scaled point set
      int best = 0;
      double best_d = 1e300;
      for (int k = 0; k < c.size; ++k) {
        const double d = std::norm(alpha * z - alpha * c.points[k]);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      CHECK(best == pick);
    }
  }
}
