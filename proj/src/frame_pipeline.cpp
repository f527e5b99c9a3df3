#include "objmap/frame_pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace objmap {

std::optional<std::string> detection_problem(const Detection& det,
                                             const CameraIntrinsics& intr) {
  if (!det.bbox.valid()) return "malformed bounding box";
  if (det.bbox.area() <= 0.0) return "bounding box has zero area";
  if (!det.bbox.intersects_image(intr)) return "bounding box outside image";
  if (det.class_obs.class_id.empty()) return "empty class id";
  if (det.class_obs.class_id.find_first_of(" \t\r\n") != std::string::npos) {
    return "class id contains whitespace";
  }
  if (!(det.class_obs.probability >= 0.0 && det.class_obs.probability <= 1.0)) {
    return "probability outside [0,1]";
  }
  if (!std::isfinite(det.mean_depth) || det.mean_depth <= 0.0) {
    return "non-positive mean depth";
  }
  return std::nullopt;
}

ObjectRecord lift_detection(const Detection& det, const CameraPose& pose,
                            const CameraIntrinsics& intr,
                            const DepthRange& range, const ScoreWeights& w,
                            std::int64_t frame_index) {
  if (!(det.mean_depth > 0.0)) {
    throw std::invalid_argument("lift_detection: mean_depth must be positive");
  }
  ObjectRecord record;
  record.position =
      back_project(det.bbox.center(), det.mean_depth, pose, intr);
  record.extent = {det.bbox.width() * det.mean_depth / intr.fx,
                   det.bbox.height() * det.mean_depth / intr.fy};
  record.class_obs = det.class_obs;
  record.observed_depth = det.mean_depth;
  record.objectness =
      objectness_score(det.class_obs, depth_score(det.mean_depth, range), w);
  record.frame_index = frame_index;
  return record;
}

FrameResult process_frame(ObjectStore& store, const FrameInput& input,
                          const CameraIntrinsics& intr) {
  const auto start = std::chrono::steady_clock::now();
  FrameResult result;
  result.outcomes.reserve(input.detections.size());
  const ViewContext view{input.pose, intr};
  const StoreConfig& cfg = store.config();

  for (const Detection& det : input.detections) {
    if (auto problem = detection_problem(det, intr)) {
      result.outcomes.push_back(
          {UpdateOutcome::Kind::kSkipped, 0, std::move(*problem)});
      continue;
    }
    const ObjectRecord candidate =
        lift_detection(det, input.pose, intr, cfg.depth_range, cfg.weights,
                       input.frame_index);
    result.outcomes.push_back(store.update_with_detection(candidate, view));
  }

  result.projected_records = store.project_visible(view);
  result.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

std::optional<double> mean_depth_of_patch(std::span<const float> patch) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const float sample : patch) {
    if (std::isfinite(sample) && sample > 0.0f) {
      sum += sample;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace objmap
