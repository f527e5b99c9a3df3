#include "objmap/object_store.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace objmap {

namespace {

constexpr std::size_t kLinearScanLimit = 16;
constexpr double kScoreConsistencyTol = 1e-9;

bool replacement_wins(ReplacementPolicy policy, const ObjectRecord& incoming,
                      const ObjectRecord& stored) {
  switch (policy) {
    case ReplacementPolicy::kObjectness:
      return incoming.objectness > stored.objectness;
    case ReplacementPolicy::kMaxProbability:
      return incoming.class_obs.probability > stored.class_obs.probability;
    case ReplacementPolicy::kLastWins:
      return true;
  }
  return false;
}

}  // namespace

std::string UpdateOutcome::to_string() const {
  switch (kind) {
    case Kind::kInsertedNew:
      return "inserted id=" + std::to_string(target);
    case Kind::kReplacedExisting:
      return "replaced id=" + std::to_string(target);
    case Kind::kDiscardedLowerScore:
      return "discarded id=" + std::to_string(target);
    case Kind::kSkipped:
      return "skipped: " + detail;
  }
  return "";
}

ObjectStore::ObjectStore(StoreConfig cfg) : cfg_(cfg) {
  if (!cfg_.depth_range.valid() || !cfg_.weights.valid() ||
      !(cfg_.iou_threshold > 0.0 && cfg_.iou_threshold <= 1.0) ||
      cfg_.knn_k < 1) {
    throw std::invalid_argument("ObjectStore: invalid config");
  }
}

std::size_t ObjectStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

void ObjectStore::validate_candidate(const ObjectRecord& candidate) const {
  if (!candidate.position.allFinite() || !candidate.extent.valid() ||
      !candidate.class_obs.valid() || !(candidate.observed_depth > 0.0)) {
    throw std::invalid_argument("update_with_detection: invalid candidate");
  }
  const double expected = objectness_score(
      candidate.class_obs,
      depth_score(candidate.observed_depth, cfg_.depth_range), cfg_.weights);
  if (std::abs(candidate.objectness - expected) > kScoreConsistencyTol) {
    throw std::invalid_argument(
        "update_with_detection: candidate objectness inconsistent with store "
        "config");
  }
}

std::vector<ObjectRecord> ObjectStore::knn_locked(const WorldPoint& query,
                                                  std::size_t k) const {
  std::vector<ObjectRecord> out;
  if (k == 0 || records_.empty()) return out;

  const bool linear =
      cfg_.index_mode == IndexMode::kLinear ||
      (cfg_.index_mode == IndexMode::kAuto && records_.size() < kLinearScanLimit);
  if (linear) {
    std::vector<KdTreeIndex3D::Neighbor> best;
    best.reserve(records_.size());
    for (const ObjectRecord& r : records_) {
      best.push_back({(r.position - query).squaredNorm(), r.id});
    }
    std::sort(best.begin(), best.end(), [](const auto& a, const auto& b) {
      if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
      return a.id < b.id;
    });
    if (best.size() > k) best.resize(k);
    out.reserve(best.size());
    for (const auto& n : best) out.push_back(records_[n.id]);
    return out;
  }

  const auto neighbors = index_.nearest(query, k);
  out.reserve(neighbors.size());
  for (const auto& n : neighbors) out.push_back(records_[n.id]);
  return out;
}

std::vector<ObjectRecord> ObjectStore::search_knn(const WorldPoint& query,
                                                  std::size_t k) const {
  std::shared_lock lock(mutex_);
  return knn_locked(query, k);
}

UpdateOutcome ObjectStore::update_with_detection(const ObjectRecord& candidate,
                                                 const ViewContext& view) {
  validate_candidate(candidate);
  std::unique_lock lock(mutex_);

  const auto insert_new = [&]() {
    ObjectRecord record = candidate;
    record.id = static_cast<ObjectId>(records_.size());
    records_.push_back(record);
    index_.insert(record.id, record.position);
    return UpdateOutcome{UpdateOutcome::Kind::kInsertedNew, record.id, {}};
  };

  if (records_.empty()) {
    return insert_new();
  }

  const auto candidate_box = reconstruct_bbox(candidate.position,
                                              candidate.extent, view.pose,
                                              view.intrinsics);
  const ObjectRecord* best = nullptr;
  double best_iou = 0.0;
  if (candidate_box) {
    // Neighbors arrive ordered by (distance, id), so keeping the first
    // strict maximum resolves IOU ties toward the nearer, then lower id.
    for (const ObjectRecord& neighbor :
         knn_locked(candidate.position, cfg_.knn_k)) {
      const auto neighbor_box = reconstruct_bbox(
          neighbor.position, neighbor.extent, view.pose, view.intrinsics);
      if (!neighbor_box) continue;
      const double iou = compute_iou(*candidate_box, *neighbor_box);
      if (iou > cfg_.iou_threshold && iou > best_iou) {
        best_iou = iou;
        best = &records_[neighbor.id];
      }
    }
  }

  if (best == nullptr) {
    return insert_new();
  }

  if (replacement_wins(cfg_.policy, candidate, *best)) {
    const ObjectId id = best->id;
    ObjectRecord replacement = candidate;
    replacement.id = id;
    records_[id] = replacement;
    index_.update(id, replacement.position);
    return UpdateOutcome{UpdateOutcome::Kind::kReplacedExisting, id, {}};
  }
  return UpdateOutcome{UpdateOutcome::Kind::kDiscardedLowerScore, best->id, {}};
}

std::vector<ObjectRecord> ObjectStore::snapshot() const {
  std::shared_lock lock(mutex_);
  return records_;
}

std::vector<ProjectedRecord> ObjectStore::project_visible(
    const ViewContext& view) const {
  std::shared_lock lock(mutex_);
  std::vector<ProjectedRecord> out;
  for (const ObjectRecord& r : records_) {
    if (const auto box =
            reconstruct_bbox(r.position, r.extent, view.pose, view.intrinsics)) {
      out.push_back({r.id, *box});
    }
  }
  return out;
}

}  // namespace objmap
