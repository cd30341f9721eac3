#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riclink/rng.hpp"

namespace riclink {

enum class Scheme { Psk, Qam };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

// Rectangular and polar view of one symbol location.
struct ConstellationPoint {
  double i;
  double q;
  double amp;    // sqrt(i^2 + q^2)
  double phase;  // atan2(q, i) folded into [0, 2*pi)
};

ConstellationPoint make_point(Complex z);

// Symbol alphabet with unit average energy and a Gray bit labeling.
// Immutable after construction; safe for concurrent reads.
struct Constellation {
  Scheme scheme = Scheme::Psk;
  int size = 0;             // M
  int bits_per_symbol = 0;  // log2(M)
  double phase_offset = 0.0;

  Eigen::VectorXcd points;                    // symbol index -> point
  std::vector<std::uint32_t> label_of_index;  // symbol index -> bit label
  std::vector<std::int32_t> index_of_label;   // bit label -> symbol index

  // QAM decision grid for the O(1) slicer; cells without a point (cut
  // corners of cross shapes) hold -1.
  int grid_cols = 0;
  int grid_rows = 0;
  double grid_scale = 1.0;  // multiplies the odd-integer levels
  std::vector<std::int32_t> index_of_cell;

  ConstellationPoint point(int index) const;
  double average_energy() const;
};

// m equally spaced unit-amplitude phases starting at phase_offset,
// binary-reflected Gray labels over the angular order. 2 <= m <= 1024.
Constellation build_psk(int m, double phase_offset = 0.0);

// Square grid for even log2(m); 4x2 rectangle for m=8 and cross shapes
// (square with corner blocks removed) for m in {32, 128, 512}. Per-axis
// Gray labels; scaled to unit average energy. 4 <= m <= 1024.
Constellation build_qam(int m);

inline std::uint32_t gray_code(std::uint32_t index) { return index ^ (index >> 1); }
std::uint32_t gray_decode(std::uint32_t label);

// Consecutive groups of bits_per_symbol bits become symbol indices.
std::vector<int> map_bits(const Constellation& c, std::span<const std::uint8_t> bits);
// Exact inverse of map_bits.
std::vector<std::uint8_t> demap_bits(const Constellation& c, std::span<const int> indices);

// Nearest point by full scan; ties resolve to the lowest index.
int nearest_index(const Constellation& c, Complex z);
// Decision-region slicer: O(1) for PSK and grid interiors, falls back to
// the full scan when the rounded cell is cut. Agrees with nearest_index
// everywhere except exact ties.
int slice_index(const Constellation& c, Complex z);

double min_distance(const Constellation& c);

}  // namespace riclink
