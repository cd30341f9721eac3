#include "riclink/theory.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "riclink/numeric.hpp"

namespace riclink {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;
constexpr int kCraigNodes = 256;
constexpr std::uint64_t kDrawChunk = 8192;

bool power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

double craig_integral(int m, double snr, int order) {
  const double upper = kPi * (1.0 - 1.0 / m);
  const double num = snr * std::sin(kPi / m) * std::sin(kPi / m);
  const auto integrand = [num](double theta) {
    const double s = std::sin(theta);
    return std::exp(-num / (s * s));
  };
  return integrate_gl(integrand, 0.0, upper, order) / kPi;
}

// Precomputed Craig nodes for one modulation order: conditional SER at
// snr g is sum_j coef[j] * exp(-g * arg[j]).
struct CraigTable {
  Eigen::ArrayXd coef;
  Eigen::ArrayXd arg;
};

CraigTable make_craig_table(int m) {
  const GaussLegendre& gl = gauss_legendre(kCraigNodes);
  const double upper = kPi * (1.0 - 1.0 / m);
  const double half = upper / 2.0;
  const double num = std::sin(kPi / m) * std::sin(kPi / m);
  CraigTable t;
  t.coef.resize(kCraigNodes);
  t.arg.resize(kCraigNodes);
  for (int j = 0; j < kCraigNodes; ++j) {
    const double theta = half * (gl.nodes[j] + 1.0);
    const double s = std::sin(theta);
    t.coef[j] = gl.weights[j] * half / kPi;
    t.arg[j] = num / (s * s);
  }
  return t;
}

void check_order(int m, int lo, const char* what) {
  if (!power_of_two(m) || m < lo || m > 1024)
    throw std::invalid_argument(std::string(what) +
                                " order must be a power of 2 in [" +
                                std::to_string(lo) + ", 1024], got " +
                                std::to_string(m));
}

// Fills ser[i] with the conditional AWGN SER at symbol SNR snr[i].
void conditional_ser(Scheme scheme, int m, const CraigTable* craig,
                     const Eigen::ArrayXd& snr, Eigen::ArrayXd& ser) {
  if (scheme == Scheme::Psk) {
    if (m == 2) {
      // Q(sqrt(2 g)) = erfc(sqrt(g)) / 2
      ser = 0.5 * snr.sqrt().unaryExpr([](double x) { return std::erfc(x); });
      return;
    }
    if (m == 4) {
      const Eigen::ArrayXd q =
          0.5 * (snr / 2.0).sqrt().unaryExpr([](double x) { return std::erfc(x); });
      ser = 1.0 - (1.0 - q) * (1.0 - q);
      return;
    }
    ser.setZero(snr.size());
    for (int j = 0; j < craig->coef.size(); ++j)
      ser += craig->coef[j] * (-craig->arg[j] * snr).exp();
    return;
  }
  const double root = 1.0 / std::sqrt(static_cast<double>(m));
  const Eigen::ArrayXd q =
      0.5 * (1.5 * snr / (m - 1)).sqrt().unaryExpr(
                [](double x) { return std::erfc(x); });
  const Eigen::ArrayXd a = 2.0 * (1.0 - root) * q;
  ser = a * (2.0 - a);
}

Eigen::ArrayXd draw_gain_scales(int diversity, const RicianParams& params,
                                const OracleOptions& options) {
  if (options.draws < 1)
    throw std::invalid_argument("oracle draw count must be >= 1");
  RngStream rng(derive_seed({options.seed, 0x04AC7E}));
  Eigen::ArrayXd scales(options.draws);
  for (std::uint64_t i = 0; i < options.draws; ++i) {
    double sum = 0.0;
    for (int l = 0; l < diversity; ++l) sum += std::norm(sample_gain(params, rng));
    scales[i] = sum;
  }
  return scales;
}

OracleEstimate average_over_scales(Scheme scheme, int m, double ebn0_db,
                                   const Eigen::ArrayXd& scales) {
  if (scheme == Scheme::Qam && (std::countr_zero(static_cast<unsigned>(m)) % 2) != 0)
    throw UnsupportedModulation("no closed-form qam reference for m = " +
                                std::to_string(m) + " (not a square set)");
  const int bits = std::countr_zero(static_cast<unsigned>(m));
  const double symbol_snr = bits * std::pow(10.0, ebn0_db / 10.0);

  CraigTable craig;
  const bool needs_craig = scheme == Scheme::Psk && m > 4;
  if (needs_craig) craig = make_craig_table(m);

  double sum = 0.0;
  double sum_sq = 0.0;
  const std::uint64_t n = scales.size();
  Eigen::ArrayXd ser;
  for (std::uint64_t start = 0; start < n; start += kDrawChunk) {
    const std::uint64_t len = std::min(kDrawChunk, n - start);
    const Eigen::ArrayXd snr =
        symbol_snr * scales.segment(static_cast<Eigen::Index>(start),
                                    static_cast<Eigen::Index>(len));
    conditional_ser(scheme, m, needs_craig ? &craig : nullptr, snr, ser);
    sum += ser.sum();
    sum_sq += ser.square().sum();
  }

  OracleEstimate est;
  est.draws = n;
  est.ser = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(n) - est.ser * est.ser);
  est.ser_std_error = std::sqrt(var / static_cast<double>(n));
  est.ber = est.ser / bits;
  est.ber_std_error = est.ser_std_error / bits;
  return est;
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double awgn_ser_psk(int m, double snr) {
  check_order(m, 2, "psk");
  if (snr < 0.0) throw std::invalid_argument("snr must be >= 0");
  if (m == 2) return q_function(std::sqrt(2.0 * snr));
  if (m == 4) {
    const double q = q_function(std::sqrt(snr));
    return 1.0 - (1.0 - q) * (1.0 - q);
  }
  // Doubling Gauss-Legendre until two refinements agree. The integrand is
  // entire in theta, so convergence is geometric.
  double prev = craig_integral(m, snr, 32);
  for (int order = 64; order <= 4096; order *= 2) {
    const double cur = craig_integral(m, snr, order);
    if (std::abs(cur - prev) <= 1e-10 * std::max(std::abs(cur), 1e-300))
      return cur;
    prev = cur;
  }
  return prev;
}

double awgn_ser_qam_square(int m, double snr) {
  check_order(m, 4, "qam");
  if (snr < 0.0) throw std::invalid_argument("snr must be >= 0");
  const int bits = std::countr_zero(static_cast<unsigned>(m));
  if (bits % 2 != 0)
    throw UnsupportedModulation("no closed-form qam reference for m = " +
                                std::to_string(m) + " (not a square set)");
  const double a = 2.0 * (1.0 - 1.0 / std::sqrt(static_cast<double>(m))) *
                   q_function(std::sqrt(3.0 * snr / (m - 1)));
  return a * (2.0 - a);
}

OracleEstimate avg_err_rician_mrc(Scheme scheme, int m, double ebn0_db,
                                  int diversity, const RicianParams& params,
                                  const OracleOptions& options) {
  check_order(m, scheme == Scheme::Psk ? 2 : 4,
              scheme == Scheme::Psk ? "psk" : "qam");
  if (diversity < 1) throw std::invalid_argument("diversity order must be >= 1");
  params.validate();
  const Eigen::ArrayXd scales = draw_gain_scales(diversity, params, options);
  return average_over_scales(scheme, m, ebn0_db, scales);
}

TheoryCurve theory_curve(Scheme scheme, int m, int diversity,
                         const RicianParams& params,
                         std::span<const double> ebn0_db,
                         const OracleOptions& options) {
  check_order(m, scheme == Scheme::Psk ? 2 : 4,
              scheme == Scheme::Psk ? "psk" : "qam");
  if (diversity < 1) throw std::invalid_argument("diversity order must be >= 1");
  params.validate();
  const Eigen::ArrayXd scales = draw_gain_scales(diversity, params, options);
  TheoryCurve curve;
  curve.scheme = scheme;
  curve.m = m;
  curve.diversity = diversity;
  curve.channel = params;
  curve.ebn0_db.assign(ebn0_db.begin(), ebn0_db.end());
  curve.points.reserve(ebn0_db.size());
  for (double e : ebn0_db)
    curve.points.push_back(average_over_scales(scheme, m, e, scales));
  return curve;
}

}  // namespace riclink
