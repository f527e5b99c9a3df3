#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "objmap/object_store.hpp"

namespace objmap {

/// One detector output: a 2D box, the predicted class with its confidence,
/// and the mean depth over the box region.
struct Detection {
  BoundingBox2D bbox;
  ClassObservation class_obs;
  double mean_depth = 0.0;
};

/// Everything a frame contributes: the camera pose from odometry plus the
/// detections made in that view.
struct FrameInput {
  std::int64_t frame_index = 0;
  CameraPose pose;
  std::vector<Detection> detections;
};

struct FrameResult {
  std::vector<UpdateOutcome> outcomes;  // one per detection, skips included
  std::vector<ProjectedRecord> projected_records;
  std::chrono::microseconds elapsed{0};
};

/// Reason the detection cannot be processed, or empty when it is usable.
/// Boxes may overhang the image edges (a close object fills the view) but
/// must intersect the image and have positive area.
std::optional<std::string> detection_problem(const Detection& det,
                                             const CameraIntrinsics& intr);

/// Lifts a detection into a maintained record: the box center back-projected
/// at the mean depth, the box converted to metric extent at that depth, and
/// the objectness computed from the configured range and weights.
/// Throws std::invalid_argument when mean_depth <= 0.
ObjectRecord lift_detection(const Detection& det, const CameraPose& pose,
                            const CameraIntrinsics& intr,
                            const DepthRange& range, const ScoreWeights& w,
                            std::int64_t frame_index);

/// Processes a frame's detections in input order, then projects the updated
/// store back into the frame's view. A bad detection becomes a skipped
/// outcome; it never aborts the frame.
FrameResult process_frame(ObjectStore& store, const FrameInput& input,
                          const CameraIntrinsics& intr);

/// Mean of the valid samples of a depth patch; non-finite and non-positive
/// samples are excluded. Empty when no sample is valid.
std::optional<double> mean_depth_of_patch(std::span<const float> patch);

}  // namespace objmap
