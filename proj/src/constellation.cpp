#include "riclink/constellation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riclink {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

int log2_exact(int m) { return std::countr_zero(static_cast<unsigned>(m)); }

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::Psk ? "psk" : "qam";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "psk") return Scheme::Psk;
  if (name == "qam") return Scheme::Qam;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected psk or qam)");
}

ConstellationPoint make_point(Complex z) {
  double phase = std::atan2(z.imag(), z.real());
  if (phase < 0.0) phase += kTwoPi;
  if (phase >= kTwoPi) phase = 0.0;
  return {z.real(), z.imag(), std::abs(z), phase};
}

ConstellationPoint Constellation::point(int index) const {
  if (index < 0 || index >= size)
    throw std::out_of_range("constellation point index out of range");
  return make_point(points[index]);
}

double Constellation::average_energy() const {
  return points.squaredNorm() / static_cast<double>(size);
}

std::uint32_t gray_decode(std::uint32_t label) {
  std::uint32_t index = label;
  for (std::uint32_t shift = 1; shift < 32; shift <<= 1) index ^= index >> shift;
  return index;
}

Constellation build_psk(int m, double phase_offset) {
  if (!power_of_two(m) || m < 2 || m > 1024)
    throw std::invalid_argument("psk order must be a power of 2 in [2, 1024], got " +
                                std::to_string(m));
  Constellation c;
  c.scheme = Scheme::Psk;
  c.size = m;
  c.bits_per_symbol = log2_exact(m);
  c.phase_offset = phase_offset;
  c.points.resize(m);
  c.label_of_index.resize(m);
  c.index_of_label.resize(m);
  for (int k = 0; k < m; ++k) {
    const double phase = phase_offset + kTwoPi * k / m;
    c.points[k] = Complex(std::cos(phase), std::sin(phase));
    const std::uint32_t label = gray_code(static_cast<std::uint32_t>(k));
    c.label_of_index[k] = label;
    c.index_of_label[label] = k;
  }
  return c;
}

namespace {

// Fills points/labels from a list of grid cells. Levels are the odd
// integers 2*cell - (extent - 1); scaling to unit average energy uses the
// exact integer energy sum.
struct GridCell {
  int col;
  int row;
  std::uint32_t label;
};

void finish_qam(Constellation& c, const std::vector<GridCell>& cells) {
  const int m = static_cast<int>(cells.size());
  long long energy_sum = 0;
  for (const GridCell& g : cells) {
    const long long lx = 2LL * g.col - (c.grid_cols - 1);
    const long long ly = 2LL * g.row - (c.grid_rows - 1);
    energy_sum += lx * lx + ly * ly;
  }
  c.grid_scale = std::sqrt(static_cast<double>(m) / static_cast<double>(energy_sum));

  c.points.resize(m);
  c.label_of_index.resize(m);
  c.index_of_label.assign(m, -1);
  c.index_of_cell.assign(static_cast<std::size_t>(c.grid_cols) * c.grid_rows, -1);

  // Symbol indices enumerate valid cells column-major.
  std::vector<GridCell> ordered = cells;
  std::sort(ordered.begin(), ordered.end(), [](const GridCell& a, const GridCell& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  for (int k = 0; k < m; ++k) {
    const GridCell& g = ordered[k];
    const double x = c.grid_scale * (2 * g.col - (c.grid_cols - 1));
    const double y = c.grid_scale * (2 * g.row - (c.grid_rows - 1));
    c.points[k] = Complex(x, y);
    c.label_of_index[k] = g.label;
    c.index_of_label[g.label] = k;
    c.index_of_cell[static_cast<std::size_t>(g.col) * c.grid_rows + g.row] = k;
  }
}

std::vector<GridCell> square_cells(int n) {
  const int side = 1 << (n / 2);
  const int half_bits = n / 2;
  std::vector<GridCell> cells;
  cells.reserve(1u << n);
  for (int col = 0; col < side; ++col)
    for (int row = 0; row < side; ++row)
      cells.push_back({col, row,
                       (gray_code(col) << half_bits) | gray_code(row)});
  return cells;
}

std::vector<GridCell> rect8_cells() {
  std::vector<GridCell> cells;
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 2; ++row)
      cells.push_back({col, row, (gray_code(col) << 1) | gray_code(row)});
  return cells;
}

// Cross shapes come from folding a 2H x H Gray-labeled rectangle: the
// central block keeps its position, the outer column blocks rotate onto
// wings above and below. Labels travel with their cells, so the central
// region stays per-axis Gray.
std::vector<GridCell> cross_cells(int n) {
  const int height = 1 << ((n - 1) / 2);  // rectangle rows, >= 8 for n >= 7
  const int width = 2 * height;
  const int wing = height / 4;       // wing height = corner cut size
  const int side = 3 * height / 2;   // cross bounding square
  const int q_bits = (n - 1) / 2;
  std::vector<GridCell> cells;
  cells.reserve(1u << n);
  for (int ci = 0; ci < width; ++ci) {
    for (int cq = 0; cq < height; ++cq) {
      const std::uint32_t label = (gray_code(ci) << q_bits) | gray_code(cq);
      int col, row;
      if (ci < wing) {  // left block -> top wing
        col = wing + cq;
        row = side - 1 - ci;
      } else if (ci >= wing + side) {  // right block -> bottom wing
        col = wing + cq;
        row = ci - (wing + side);
      } else {
        col = ci - wing;
        row = cq + wing;
      }
      cells.push_back({col, row, label});
    }
  }
  return cells;
}

}  // namespace

Constellation build_qam(int m) {
  if (!power_of_two(m) || m < 4 || m > 1024)
    throw std::invalid_argument("qam order must be a power of 2 in [4, 1024], got " +
                                std::to_string(m));
  const int n = log2_exact(m);
  Constellation c;
  c.scheme = Scheme::Qam;
  c.size = m;
  c.bits_per_symbol = n;

  std::vector<GridCell> cells;
  if (n % 2 == 0) {
    const int side = 1 << (n / 2);
    c.grid_cols = c.grid_rows = side;
    cells = square_cells(n);
  } else if (m == 8) {
    c.grid_cols = 4;
    c.grid_rows = 2;
    cells = rect8_cells();
  } else {
    const int side = 3 * (1 << ((n - 1) / 2)) / 2;
    c.grid_cols = c.grid_rows = side;
    cells = cross_cells(n);
  }
  finish_qam(c, cells);
  return c;
}

std::vector<int> map_bits(const Constellation& c, std::span<const std::uint8_t> bits) {
  const int n = c.bits_per_symbol;
  if (bits.size() % static_cast<std::size_t>(n) != 0)
    throw std::invalid_argument("bit stream length " + std::to_string(bits.size()) +
                                " is not a multiple of " + std::to_string(n));
  std::vector<int> indices(bits.size() / n);
  for (std::size_t s = 0; s < indices.size(); ++s) {
    std::uint32_t label = 0;
    for (int j = 0; j < n; ++j)
      label = (label << 1) | (bits[s * n + j] & 1u);
    indices[s] = c.index_of_label[label];
  }
  return indices;
}

std::vector<std::uint8_t> demap_bits(const Constellation& c, std::span<const int> indices) {
  const int n = c.bits_per_symbol;
  std::vector<std::uint8_t> bits(indices.size() * n);
  for (std::size_t s = 0; s < indices.size(); ++s) {
    const int idx = indices[s];
    if (idx < 0 || idx >= c.size)
      throw std::domain_error("symbol index " + std::to_string(idx) +
                              " outside [0, " + std::to_string(c.size) + ")");
    const std::uint32_t label = c.label_of_index[idx];
    for (int j = 0; j < n; ++j)
      bits[s * n + j] = static_cast<std::uint8_t>((label >> (n - 1 - j)) & 1u);
  }
  return bits;
}

int nearest_index(const Constellation& c, Complex z) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < c.size; ++k) {
    const double d = std::norm(z - c.points[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

int slice_index(const Constellation& c, Complex z) {
  if (c.scheme == Scheme::Psk) {
    if (z.real() == 0.0 && z.imag() == 0.0) return 0;
    const double step = kTwoPi / c.size;
    const double turns = (std::atan2(z.imag(), z.real()) - c.phase_offset) / step;
    long k = std::lround(turns) % c.size;
    if (k < 0) k += c.size;
    return static_cast<int>(k);
  }
  const double x = z.real() / c.grid_scale;
  const double y = z.imag() / c.grid_scale;
  long col = std::lround(0.5 * (x + (c.grid_cols - 1)));
  long row = std::lround(0.5 * (y + (c.grid_rows - 1)));
  col = std::clamp(col, 0L, static_cast<long>(c.grid_cols - 1));
  row = std::clamp(row, 0L, static_cast<long>(c.grid_rows - 1));
  const std::int32_t idx =
      c.index_of_cell[static_cast<std::size_t>(col) * c.grid_rows + row];
  return idx >= 0 ? idx : nearest_index(c, z);
}

double min_distance(const Constellation& c) {
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < c.size; ++a)
    for (int b = a + 1; b < c.size; ++b)
      best = std::min(best, std::abs(c.points[a] - c.points[b]));
  return best;
}

}  // namespace riclink
