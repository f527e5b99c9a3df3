#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace objmap {

/// Distance band over which the depth score ramps from 0 to 1.
struct DepthRange {
  double d_min = 0.8;
  double d_max = 3.0;

  bool valid() const noexcept { return d_min > 0.0 && d_min < d_max; }
};

/// Relative weight between class probability and depth score.
struct ScoreWeights {
  double alpha = 0.4;

  bool valid() const noexcept { return alpha >= 0.0 && alpha <= 1.0; }
};

/// One detector verdict: label plus its confidence.
struct ClassObservation {
  std::string class_id;
  double probability = 0.0;

  bool valid() const noexcept {
    return !class_id.empty() && probability >= 0.0 && probability <= 1.0;
  }
};

/// Min-max normalized observation distance, clamped to [0,1].
/// Throws std::invalid_argument when d <= 0.
inline double depth_score(double d, const DepthRange& range) {
  if (!(d > 0.0)) {
    throw std::invalid_argument("depth_score: distance must be positive");
  }
  const double s = (d - range.d_min) / (range.d_max - range.d_min);
  return std::clamp(s, 0.0, 1.0);
}

/// Fused objectness score: alpha * S_poc + (1 - alpha) * S_depth.
/// Rewards confident detections made at a distance where the whole object
/// is in view.
inline double objectness_score(const ClassObservation& obs, double s_depth,
                               const ScoreWeights& w) {
  return w.alpha * obs.probability + (1.0 - w.alpha) * s_depth;
}

}  // namespace objmap
