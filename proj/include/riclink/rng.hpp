#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace riclink {

using Complex = std::complex<double>;

// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Folds an ordered list of words (master seed, cell coordinates, block and
// substream ids) into one stream seed. Order-sensitive by construction.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0xA076'1D64'78BD'642Full;
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

// One independently seeded random stream. Streams derived from distinct
// (seed, coordinates, block, substream) tuples never alias, which is what
// makes block-parallel runs reproducible.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // (0, 1]; safe as a log() argument
  double uniform_pos() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  double standard_normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    return r * std::cos(6.283185307179586476925286766559 * uniform());
  }

  // Circularly symmetric complex Gaussian with E|g|^2 = 1
  // (each component N(0, 1/2)).
  Complex circular_gaussian() {
    const double r = std::sqrt(-std::log(uniform_pos()));
    const double t = 6.283185307179586476925286766559 * uniform();
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Low n bits of one draw, MSB-aligned within the word for quality.
  std::uint32_t bits(int n) {
    return static_cast<std::uint32_t>(gen_() >> (64 - n));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace riclink
