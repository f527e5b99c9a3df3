#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "objmap/frame_pipeline.hpp"

// Synthetic world and detector for exercising the pipeline without a real
// robot. World convention: y points down, the ground plane is x-z, and a
// level camera has its y axis aligned with world y.

namespace objmap {

/// Uniform double in [0, 1) from the top 53 bits; identical on every
/// platform for a given engine state.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct SceneObject {
  ObjectId id = 0;
  std::string true_class;
  WorldPoint position = WorldPoint::Zero();
  MetricExtent extent;
};

struct SceneSpec {
  std::vector<SceneObject> objects;
  CameraIntrinsics intrinsics;
};

struct SceneParams {
  std::size_t object_count = 1;
  std::uint64_t seed = 0;
  WorldPoint target_position = WorldPoint::Zero();
  std::string target_class = "chair";
  double placement_radius_min = 1.5;
  double placement_radius_max = 8.0;
  double extent_min = 0.3;
  double extent_max = 0.9;
  std::vector<std::string> class_pool;  // defaults used when empty
};

/// Deterministic scene: the target object at the configured position, the
/// rest placed around it with pairwise separation larger than the largest
/// extent. Throws std::runtime_error when the density is infeasible.
SceneSpec generate_scene(const SceneParams& params,
                         const CameraIntrinsics& intrinsics);

/// Camera pose at `position` looking at `target`, level with the ground.
CameraPose look_at_pose(const WorldPoint& position, const WorldPoint& target);

struct TimedPose {
  std::int64_t frame_index = 0;
  CameraPose pose;
};

struct ApproachParams {
  double angle_deg = 0.0;       // azimuth of the approach direction
  double start_distance = 3.0;  // meters from the target
  double end_distance = 0.3;
  double step = 0.1;
};

/// Straight-line approach toward `target`: the camera starts at
/// start_distance along the given azimuth and closes to end_distance,
/// always facing the target. Distance decreases strictly frame to frame.
std::vector<TimedPose> make_approach(const WorldPoint& target,
                                     const ApproachParams& params);

/// Distance-dependent misclassification model. The detector is reliable
/// when the whole object is in view (near_distance..far_distance), mostly
/// wrong on close partial views, and a coin flip when the object shrinks to
/// a few pixels. Wrong labels on partial views come with high confidence;
/// wrong labels at proper distance are marginal confusions.
struct DetectorNoiseModel {
  std::uint64_t seed = 0;
  double near_distance = 0.8;
  double far_distance = 3.0;
  double p_misclass_near = 0.9;
  double p_misclass_mid = 0.05;
  double p_misclass_far = 0.5;
  double bbox_jitter_frac = 0.005;  // per-edge jitter relative to box size
  double correct_prob_lo = 0.70;
  double correct_prob_hi = 0.95;
  double confused_prob_lo = 0.50;
  double confused_prob_hi = 0.75;
  double partial_prob_lo = 0.70;
  double partial_prob_hi = 0.99;
  std::map<std::string, std::vector<std::string>> confusions;

  double p_misclass(double distance) const noexcept {
    if (distance < near_distance) return p_misclass_near;
    if (distance <= far_distance) return p_misclass_mid;
    return p_misclass_far;
  }

  /// Exact emissions: no misclassification, no jitter, constant confidence.
  static DetectorNoiseModel noiseless();
};

struct SimulatedDetection {
  Detection detection;
  ObjectId source_object = 0;
  bool misclassified = false;
};

/// Emits one detection per object visible in the view, drawing noise from
/// `rng` in scene order. Out-of-view and behind-camera objects are absent.
std::vector<SimulatedDetection> simulate_detector(
    const SceneSpec& scene, const CameraPose& pose,
    const DetectorNoiseModel& noise, std::mt19937_64& rng);

struct PipelineRunConfig {
  DepthRange depth_range;
  ScoreWeights weights;
  double iou_threshold = 0.9;
  std::size_t knn_k = 3;
  ReplacementPolicy policy = ReplacementPolicy::kObjectness;
  IndexMode index_mode = IndexMode::kAuto;

  StoreConfig to_store_config() const {
    return {depth_range, weights, iou_threshold, knn_k, policy, index_mode};
  }
};

struct SimulatedFrame {
  FrameInput input;
  std::vector<SimulatedDetection> annotated;
};

/// Per-frame evaluation row for the target object (objects[0]).
struct FrameMetric {
  std::int64_t frame_index = 0;
  double target_distance = 0.0;
  std::string emitted_class;     // "-" when the target was not detected
  std::string maintained_class;  // "-" while the store has no record
  double maintained_objectness = 0.0;
};

/// Final verdict for one ground-truth object: the class of the nearest
/// maintained record and its position error.
struct ObjectOutcome {
  ObjectId scene_object = 0;
  std::string true_class;
  std::string maintained_class;   // "-" when the store is empty
  double position_error_m = -1.0;  // -1 when the store is empty
  bool correct = false;
};

struct RunReport {
  std::vector<FrameInput> frames;
  std::vector<FrameResult> results;
  std::vector<FrameMetric> metrics;
  std::vector<ObjectRecord> final_snapshot;
  std::vector<ObjectOutcome> object_outcomes;
};

/// Runs the detector over the trajectory; all randomness flows from
/// noise.seed.
std::vector<SimulatedFrame> simulate_trajectory(
    const SceneSpec& scene, std::span<const TimedPose> trajectory,
    const DetectorNoiseModel& noise);

/// Feeds prepared frames through a fresh store and evaluates the outcome
/// against the scene's ground truth.
RunReport run_frames(const SceneSpec& scene,
                     std::span<const SimulatedFrame> frames,
                     const PipelineRunConfig& cfg);

/// simulate_trajectory + run_frames. Deterministic for a fixed seed.
RunReport run_trajectory(const SceneSpec& scene,
                         std::span<const TimedPose> trajectory,
                         const DetectorNoiseModel& noise,
                         const PipelineRunConfig& cfg);

}  // namespace objmap
