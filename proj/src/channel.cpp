#include "riclink/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace riclink {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

std::string to_string(FadingModel model) {
  return model == FadingModel::GaussianLimit ? "gaussian" : "finite";
}

FadingModel fading_model_from_string(const std::string& name) {
  if (name == "gaussian") return FadingModel::GaussianLimit;
  if (name == "finite") return FadingModel::FiniteScatterers;
  throw std::invalid_argument("unknown fading model '" + name +
                              "' (expected gaussian or finite)");
}

void RicianParams::validate() const {
  if (std::isnan(k_factor) || k_factor < 0.0)
    throw std::invalid_argument("k_factor must be >= 0 (or inf), got " +
                                std::to_string(k_factor));
  if (!std::isfinite(los_phase))
    throw std::invalid_argument("los_phase must be finite");
  if (model == FadingModel::FiniteScatterers) {
    if (n_scatterers < 1)
      throw std::invalid_argument("n_scatterers must be >= 1, got " +
                                  std::to_string(n_scatterers));
    if (std::isinf(k_factor))
      throw std::invalid_argument("k_factor = inf needs the gaussian model");
  }
}

double ebn0_to_n0(double ebn0_db, int m, double es) {
  if (m < 2) throw std::invalid_argument("constellation size must be >= 2");
  if (!(es > 0.0)) throw std::invalid_argument("symbol energy must be > 0");
  return es / (std::log2(static_cast<double>(m)) * std::pow(10.0, ebn0_db / 10.0));
}

NoiseSpec make_noise(double ebn0_db, int m, double es) {
  return {ebn0_db, es, ebn0_to_n0(ebn0_db, m, es)};
}

Complex sample_rician_gaussian(const RicianParams& params, RngStream& rng) {
  const Complex los_dir(std::cos(params.los_phase), std::sin(params.los_phase));
  if (std::isinf(params.k_factor)) return los_dir;  // pure LOS, no randomness
  const double k = params.k_factor;
  return std::sqrt(k / (k + 1.0)) * los_dir +
         std::sqrt(1.0 / (k + 1.0)) * rng.circular_gaussian();
}

Complex sample_rician_finite_n(const RicianParams& params, RngStream& rng) {
  const double k = params.k_factor;
  const int n = params.n_scatterers;
  const double rho = std::sqrt(1.0 / ((k + 1.0) * n));
  Complex h = std::sqrt(k / (k + 1.0)) *
              Complex(std::cos(params.los_phase), std::sin(params.los_phase));
  for (int i = 0; i < n; ++i) {
    const double psi = kTwoPi * rng.uniform();
    h += rho * Complex(std::cos(psi), std::sin(psi));
  }
  return h;
}

Complex sample_gain(const RicianParams& params, RngStream& rng) {
  return params.model == FadingModel::GaussianLimit
             ? sample_rician_gaussian(params, rng)
             : sample_rician_finite_n(params, rng);
}

void transmit_into(BranchObservation& obs, Complex symbol, int diversity,
                   const RicianParams& params, const NoiseSpec& noise,
                   RngStream& rng) {
  if (diversity < 1)
    throw std::invalid_argument("diversity order must be >= 1, got " +
                                std::to_string(diversity));
  obs.gains.resize(diversity);
  obs.received.resize(diversity);
  const double sigma = std::sqrt(noise.n0);
  for (int l = 0; l < diversity; ++l) {
    const Complex h = sample_gain(params, rng);
    obs.gains[l] = h;
    obs.received[l] = h * symbol + sigma * rng.circular_gaussian();
  }
}

BranchObservation transmit(Complex symbol, int diversity, const RicianParams& params,
                           const NoiseSpec& noise, RngStream& rng) {
  BranchObservation obs;
  transmit_into(obs, symbol, diversity, params, noise, rng);
  return obs;
}

}  // namespace riclink
