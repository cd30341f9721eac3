#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "riclink/channel.hpp"
#include "riclink/constellation.hpp"

namespace riclink {

class UnsupportedModulation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double q_function(double x);

// Exact symbol error rate of coherent M-PSK in AWGN at symbol SNR `snr`.
// Closed forms for m <= 4, otherwise the single-integral form evaluated
// by node-doubling Gauss-Legendre quadrature.
double awgn_ser_psk(int m, double snr);

// Exact SER of square M-QAM in AWGN. Throws UnsupportedModulation when
// log2(m) is odd (cross and rectangular sets have no closed form here).
double awgn_ser_qam_square(int m, double snr);

struct OracleOptions {
  std::uint64_t draws = 1'000'000;
  std::uint64_t seed = 0x5EED;
};

struct OracleEstimate {
  double ser = 0.0;
  double ber = 0.0;
  double ser_std_error = 0.0;
  double ber_std_error = 0.0;
  std::uint64_t draws = 0;
};

// Semi-analytic reference: conditional AWGN error rates averaged over
// Monte Carlo draws of the post-MRC gain sum. BER uses the Gray mapping
// approximation ser / log2(m).
OracleEstimate avg_err_rician_mrc(Scheme scheme, int m, double ebn0_db,
                                  int diversity, const RicianParams& params,
                                  const OracleOptions& options = {});

struct TheoryCurve {
  Scheme scheme = Scheme::Psk;
  int m = 2;
  int diversity = 1;
  RicianParams channel;
  std::vector<double> ebn0_db;
  std::vector<OracleEstimate> points;  // aligned with ebn0_db
};

// Shares one set of gain draws across all Eb/N0 points, so the returned
// curve is non-increasing by construction.
TheoryCurve theory_curve(Scheme scheme, int m, int diversity,
                         const RicianParams& params,
                         std::span<const double> ebn0_db,
                         const OracleOptions& options = {});

}  // namespace riclink
