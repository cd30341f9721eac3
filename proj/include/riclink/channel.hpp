#pragma once

#include <Eigen/Dense>
#include <string>

#include "riclink/rng.hpp"

namespace riclink {

enum class FadingModel { GaussianLimit, FiniteScatterers };

std::string to_string(FadingModel model);
FadingModel fading_model_from_string(const std::string& name);

// K is the linear Rician factor (LOS power over diffuse power). K = 0 is
// Rayleigh, K = +inf a pure LOS (AWGN) channel. Both models keep
// E[|h|^2] = 1 for every K. The LOS phase is a fixed parameter; with a
// coherent receiver it never affects error rates.
struct RicianParams {
  double k_factor = 0.0;
  FadingModel model = FadingModel::GaussianLimit;
  int n_scatterers = 16;  // FiniteScatterers only
  double los_phase = 0.0;

  void validate() const;
};

struct NoiseSpec {
  double ebn0_db = 0.0;
  double es = 1.0;  // mean symbol energy
  double n0 = 0.0;  // total complex noise variance per branch, derived
};

// Eb/N0 is defined per receive branch; m is the constellation size.
double ebn0_to_n0(double ebn0_db, int m, double es);
NoiseSpec make_noise(double ebn0_db, int m, double es);

struct BranchObservation {
  Eigen::VectorXcd gains;     // h_l, one per diversity branch
  Eigen::VectorXcd received;  // h_l x + w_l
};

Complex sample_rician_gaussian(const RicianParams& params, RngStream& rng);
Complex sample_rician_finite_n(const RicianParams& params, RngStream& rng);
Complex sample_gain(const RicianParams& params, RngStream& rng);

BranchObservation transmit(Complex symbol, int diversity, const RicianParams& params,
                           const NoiseSpec& noise, RngStream& rng);
void transmit_into(BranchObservation& obs, Complex symbol, int diversity,
                   const RicianParams& params, const NoiseSpec& noise, RngStream& rng);

}  // namespace riclink
