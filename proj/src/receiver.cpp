#include "riclink/receiver.hpp"

namespace riclink {

DecisionStatistic mrc_combine(const BranchObservation& obs) {
  const double scale = obs.gains.squaredNorm();
  if (scale <= 0.0) return {Complex(0.0, 0.0), 0.0};
  // dot() conjugates its first argument, so this is sum conj(h_l) r_l.
  return {obs.gains.dot(obs.received) / scale, scale};
}

int detect_nearest(const Constellation& c, const DecisionStatistic& stat) {
  return nearest_index(c, stat.combined);
}

int detect_fast(const Constellation& c, const DecisionStatistic& stat) {
  return slice_index(c, stat.combined);
}

}  // namespace riclink
