#pragma once

#include "riclink/channel.hpp"
#include "riclink/constellation.hpp"

namespace riclink {

// combined is the MRC output normalized so the signal part equals the
// transmitted symbol; snr_scale is sum |h_l|^2, the post-combining SNR
// gain relative to a single unfaded branch. snr_scale == 0 marks a
// degenerate (all branches zero) observation.
struct DecisionStatistic {
  Complex combined;
  double snr_scale;
};

DecisionStatistic mrc_combine(const BranchObservation& obs);

int detect_nearest(const Constellation& c, const DecisionStatistic& stat);
int detect_fast(const Constellation& c, const DecisionStatistic& stat);

}  // namespace riclink
