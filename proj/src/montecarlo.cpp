#include "riclink/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "riclink/numeric.hpp"
#include "riclink/receiver.hpp"
#include "riclink/sweep_config.hpp"

namespace riclink {

namespace {

constexpr double kConfidence = 0.95;
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kChannelStream = 2;

struct BlockResult {
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t symbols = 0;
  std::uint64_t symbol_errors = 0;
};

// One block is a pure function of (cell seed, block index). Data bits and
// channel draws come from separate substreams so the two never alias.
BlockResult simulate_block(const Constellation& c, const SimPoint& pt,
                           const NoiseSpec& noise, std::uint64_t seed,
                           std::uint64_t block, std::uint64_t symbols) {
  RngStream data(derive_seed({seed, kDataStream, block}));
  RngStream chan(derive_seed({seed, kChannelStream, block}));
  const int n = c.bits_per_symbol;

  std::vector<std::uint8_t> tx_bits(symbols * n);
  for (std::uint64_t s = 0; s < symbols; ++s) {
    const std::uint32_t word = data.bits(n);
    for (int j = 0; j < n; ++j)
      tx_bits[s * n + j] = static_cast<std::uint8_t>((word >> (n - 1 - j)) & 1u);
  }
  const std::vector<int> tx = map_bits(c, tx_bits);

  BlockResult res;
  res.symbols = symbols;
  res.bits = symbols * n;

  std::vector<int> rx(symbols);
  BranchObservation obs;
  for (std::uint64_t s = 0; s < symbols; ++s) {
    transmit_into(obs, c.points[tx[s]], pt.diversity, pt.channel, noise, chan);
    const DecisionStatistic stat = mrc_combine(obs);
    if (stat.snr_scale == 0.0) {
      // All branches faded to zero: the decision carries no information,
      // score every bit of the symbol as errored.
      res.symbol_errors += 1;
      res.bit_errors += n;
      rx[s] = tx[s];
      continue;
    }
    rx[s] = detect_fast(c, stat);
    if (rx[s] != tx[s]) res.symbol_errors += 1;
  }

  const std::vector<std::uint8_t> rx_bits = demap_bits(c, rx);
  for (std::size_t i = 0; i < tx_bits.size(); ++i)
    res.bit_errors += tx_bits[i] != rx_bits[i];
  return res;
}

}  // namespace

void StoppingRule::validate() const {
  if (min_bit_errors < 1)
    throw std::invalid_argument("min_bit_errors must be >= 1");
  if (batch_bits < 1 || batch_bits > max_bits)
    throw std::invalid_argument("batch_bits must lie in [1, max_bits]");
}

double ber_of(std::uint64_t bit_errors, std::uint64_t bits_sent) {
  if (bits_sent == 0) throw std::domain_error("ber undefined for zero bits sent");
  return static_cast<double>(bit_errors) / static_cast<double>(bits_sent);
}

std::pair<double, double> wilson_ci(std::uint64_t errors, std::uint64_t trials,
                                    double confidence) {
  if (trials == 0)
    throw std::domain_error("confidence interval undefined for zero trials");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::domain_error("confidence must lie in (0, 1)");
  const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / n;
  const double z2n = z * z / n;
  const double center = (p + z2n / 2.0) / (1.0 + z2n);
  const double half =
      (z / (1.0 + z2n)) * std::sqrt(p * (1.0 - p) / n + z2n / (4.0 * n));
  const double low = errors == 0 ? 0.0 : std::max(0.0, center - half);
  const double high = errors == trials ? 1.0 : std::min(1.0, center + half);
  return {low, high};
}

int worker_count() {
  if (const char* env = std::getenv("RICLINK_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      return static_cast<int>(std::min(v, 256L));
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::uint64_t cell_seed(const SimPoint& point) {
  return derive_seed({point.seed,
                      point.scheme == Scheme::Psk ? 0ull : 1ull,
                      static_cast<std::uint64_t>(point.m),
                      static_cast<std::uint64_t>(std::llround(point.ebn0_db * 1e6)),
                      static_cast<std::uint64_t>(point.diversity),
                      std::bit_cast<std::uint64_t>(point.channel.k_factor),
                      point.channel.model == FadingModel::GaussianLimit ? 0ull : 1ull,
                      static_cast<std::uint64_t>(point.channel.n_scatterers),
                      std::bit_cast<std::uint64_t>(point.channel.los_phase)});
}

BerEstimate run_point(const SimPoint& point) {
  point.stop.validate();
  point.channel.validate();
  if (point.diversity < 1)
    throw std::invalid_argument("diversity order must be >= 1, got " +
                                std::to_string(point.diversity));
  const Constellation c = point.scheme == Scheme::Psk ? build_psk(point.m)
                                                      : build_qam(point.m);
  const int n = c.bits_per_symbol;
  const NoiseSpec noise = make_noise(point.ebn0_db, point.m, c.average_energy());
  const std::uint64_t seed = cell_seed(point);

  const std::uint64_t spb = std::max<std::uint64_t>(1, point.stop.batch_bits / n);
  const std::uint64_t total_symbols =
      std::max<std::uint64_t>(1, point.stop.max_bits / n);
  const std::uint64_t blocks = (total_symbols + spb - 1) / spb;
  const auto block_symbols = [&](std::uint64_t b) {
    return std::min(spb, total_symbols - b * spb);
  };

  BlockResult acc;
  std::uint64_t next = 0;
  bool done = false;
  while (!done && next < blocks) {
    const int wave =
        static_cast<int>(std::min<std::uint64_t>(worker_count(), blocks - next));
    std::vector<BlockResult> results(wave);
    if (wave == 1) {
      results[0] = simulate_block(c, point, noise, seed, next, block_symbols(next));
    } else {
      std::vector<std::thread> pool;
      pool.reserve(wave);
      for (int i = 0; i < wave; ++i) {
        const std::uint64_t b = next + i;
        pool.emplace_back([&, i, b] {
          results[i] = simulate_block(c, point, noise, seed, b, block_symbols(b));
        });
      }
      for (std::thread& t : pool) t.join();
    }
    // Fold in block order; blocks past the stopping boundary were computed
    // speculatively and are dropped, so the outcome is worker invariant.
    for (int i = 0; i < wave && !done; ++i) {
      acc.bits += results[i].bits;
      acc.bit_errors += results[i].bit_errors;
      acc.symbols += results[i].symbols;
      acc.symbol_errors += results[i].symbol_errors;
      done = acc.bit_errors >= point.stop.min_bit_errors;
    }
    next += wave;
  }

  BerEstimate est;
  est.bits_sent = acc.bits;
  est.bit_errors = acc.bit_errors;
  est.symbols_sent = acc.symbols;
  est.symbol_errors = acc.symbol_errors;
  est.ber = ber_of(acc.bit_errors, acc.bits);
  est.ser = static_cast<double>(acc.symbol_errors) / static_cast<double>(acc.symbols);
  std::tie(est.ci_low, est.ci_high) = wilson_ci(acc.bit_errors, acc.bits, kConfidence);
  return est;
}

std::vector<SweepResult> run_sweep(const SweepConfig& config) {
  std::vector<SweepResult> out;
  for (const SimPoint& point : expand_cells(config))
    out.push_back({point, run_point(point)});
  return out;
}

}  // namespace riclink
