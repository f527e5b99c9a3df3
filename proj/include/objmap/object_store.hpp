#pragma once

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <vector>

#include "objmap/geometry.hpp"
#include "objmap/kd_tree.hpp"
#include "objmap/scoring.hpp"

namespace objmap {

using ObjectId = std::uint64_t;

/// One maintained object. The id is assigned by the store on insert and kept
/// stable across replacements; everything else is the payload of whichever
/// observation currently wins.
struct ObjectRecord {
  ObjectId id = 0;
  WorldPoint position = WorldPoint::Zero();
  MetricExtent extent;
  ClassObservation class_obs;
  double objectness = 0.0;
  double observed_depth = 0.0;
  std::int64_t frame_index = 0;
};

/// Which score decides whether an overlapping detection replaces the stored
/// record. kObjectness is the maintained algorithm; the other two are
/// comparison baselines.
enum class ReplacementPolicy { kObjectness, kMaxProbability, kLastWins };

/// kAuto scans linearly below 16 records and uses the kd-tree above; the
/// forced modes exist for the oracle and benchmark comparisons.
enum class IndexMode { kAuto, kKdTree, kLinear };

struct StoreConfig {
  DepthRange depth_range;
  ScoreWeights weights;
  double iou_threshold = 0.9;
  std::size_t knn_k = 3;
  ReplacementPolicy policy = ReplacementPolicy::kObjectness;
  IndexMode index_mode = IndexMode::kAuto;
};

/// The camera view a frame's detections were made in.
struct ViewContext {
  CameraPose pose;
  CameraIntrinsics intrinsics;
};

struct UpdateOutcome {
  enum class Kind { kInsertedNew, kReplacedExisting, kDiscardedLowerScore, kSkipped };
  Kind kind = Kind::kInsertedNew;
  ObjectId target = 0;  // inserted id, or the existing record involved
  std::string detail;   // skip reason; empty otherwise

  std::string to_string() const;
};

struct ProjectedRecord {
  ObjectId id = 0;
  BoundingBox2D bbox;
};

/// Spatially indexed set of maintained objects.
///
/// update_with_detection implements the class selection rule: find the k
/// nearest stored objects, re-synthesize both boxes in the current view,
/// and where the best overlap clears the IOU threshold let the configured
/// policy decide replacement; otherwise the detection is a new object.
///
/// Single writer, multiple readers: updates are serialized by the caller;
/// snapshot and searches may run concurrently with them.
class ObjectStore {
 public:
  explicit ObjectStore(StoreConfig cfg);

  const StoreConfig& config() const noexcept { return cfg_; }
  std::size_t size() const;

  /// Up to k records by ascending 3D distance to the query; ties break on id.
  std::vector<ObjectRecord> search_knn(const WorldPoint& query,
                                       std::size_t k) const;

  /// Applies one lifted detection. The candidate's id is ignored; the store
  /// assigns one on insert and keeps the existing id on replacement.
  /// Throws std::invalid_argument when the candidate violates record
  /// invariants (including an objectness inconsistent with the store config).
  UpdateOutcome update_with_detection(const ObjectRecord& candidate,
                                      const ViewContext& view);

  /// Id-ordered copy of the current records.
  std::vector<ObjectRecord> snapshot() const;

  /// Boxes of all records visible in the given view, id order.
  std::vector<ProjectedRecord> project_visible(const ViewContext& view) const;

 private:
  void validate_candidate(const ObjectRecord& candidate) const;
  std::vector<ObjectRecord> knn_locked(const WorldPoint& query,
                                       std::size_t k) const;

  mutable std::shared_mutex mutex_;
  StoreConfig cfg_;
  std::vector<ObjectRecord> records_;  // slot index == id
  KdTreeIndex3D index_;
};

}  // namespace objmap
