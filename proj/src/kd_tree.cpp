#include "objmap/kd_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace objmap {

namespace {

bool neighbor_less(const KdTreeIndex3D::Neighbor& a,
                   const KdTreeIndex3D::Neighbor& b) {
  if (a.dist_sq != b.dist_sq) return a.dist_sq < b.dist_sq;
  return a.id < b.id;
}

// Keeps `best` sorted by (dist_sq, id) and capped at k elements.
void offer(std::vector<KdTreeIndex3D::Neighbor>& best, std::size_t k,
           KdTreeIndex3D::Neighbor cand) {
  if (best.size() == k && !neighbor_less(cand, best.back())) {
    return;
  }
  auto pos = std::upper_bound(best.begin(), best.end(), cand, neighbor_less);
  best.insert(pos, cand);
  if (best.size() > k) {
    best.pop_back();
  }
}

}  // namespace

void KdTreeIndex3D::insert(std::uint64_t id, const Eigen::Vector3d& position) {
  if (id_to_entry_.contains(id)) {
    throw std::invalid_argument("KdTreeIndex3D::insert: duplicate id");
  }
  const auto idx = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back(Entry{position, id, true});
  id_to_entry_.emplace(id, idx);
  pending_.push_back(idx);
  maybe_rebuild();
}

void KdTreeIndex3D::update(std::uint64_t id, const Eigen::Vector3d& position) {
  const auto it = id_to_entry_.find(id);
  if (it == id_to_entry_.end()) {
    throw std::invalid_argument("KdTreeIndex3D::update: unknown id");
  }
  const std::uint32_t old_idx = it->second;
  const bool was_pending =
      std::find(pending_.begin(), pending_.end(), old_idx) != pending_.end();
  if (was_pending) {
    // Not in the tree yet; move in place.
    entries_[old_idx].position = position;
    return;
  }
  entries_[old_idx].live = false;
  ++dead_in_tree_;
  const auto idx = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back(Entry{position, id, true});
  it->second = idx;
  pending_.push_back(idx);
  maybe_rebuild();
}

void KdTreeIndex3D::maybe_rebuild() {
  const std::size_t churn = pending_.size() + dead_in_tree_;
  if (churn > std::max<std::size_t>(64, size() / 4)) {
    rebuild();
  }
}

void KdTreeIndex3D::rebuild() {
  std::vector<Entry> compacted;
  compacted.reserve(id_to_entry_.size());
  for (const Entry& e : entries_) {
    if (e.live) {
      compacted.push_back(e);
    }
  }
  entries_ = std::move(compacted);
  for (std::uint32_t i = 0; i < entries_.size(); ++i) {
    id_to_entry_[entries_[i].id] = i;
  }
  pending_.clear();
  dead_in_tree_ = 0;
  nodes_.clear();
  nodes_.reserve(entries_.size());
  std::vector<std::uint32_t> items(entries_.size());
  for (std::uint32_t i = 0; i < items.size(); ++i) items[i] = i;
  root_ = build_subtree(items, 0, items.size(), 0);
}

std::int32_t KdTreeIndex3D::build_subtree(std::vector<std::uint32_t>& items,
                                          std::size_t lo, std::size_t hi,
                                          int depth) {
  if (lo >= hi) return -1;
  const int axis = depth % 3;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::nth_element(items.begin() + lo, items.begin() + mid,
                   items.begin() + hi,
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ca = entries_[a].position[axis];
                     const double cb = entries_[b].position[axis];
                     if (ca != cb) return ca < cb;
                     return entries_[a].id < entries_[b].id;
                   });
  Node node;
  node.entry = items[mid];
  node.axis = static_cast<std::uint8_t>(axis);
  const auto node_idx = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  const std::int32_t left = build_subtree(items, lo, mid, depth + 1);
  const std::int32_t right = build_subtree(items, mid + 1, hi, depth + 1);
  nodes_[node_idx].left = left;
  nodes_[node_idx].right = right;
  return node_idx;
}

void KdTreeIndex3D::search_node(std::int32_t node_idx,
                                const Eigen::Vector3d& query, std::size_t k,
                                std::vector<Neighbor>& best) const {
  if (node_idx < 0) return;
  const Node& node = nodes_[static_cast<std::size_t>(node_idx)];
  const Entry& entry = entries_[node.entry];
  if (entry.live) {
    offer(best, k, Neighbor{(entry.position - query).squaredNorm(), entry.id});
  }
  const double delta = query[node.axis] - entry.position[node.axis];
  const std::int32_t near = delta < 0.0 ? node.left : node.right;
  const std::int32_t far = delta < 0.0 ? node.right : node.left;
  search_node(near, query, k, best);
  if (best.size() < k || delta * delta <= best.back().dist_sq) {
    search_node(far, query, k, best);
  }
}

std::vector<KdTreeIndex3D::Neighbor> KdTreeIndex3D::nearest(
    const Eigen::Vector3d& query, std::size_t k) const {
  std::vector<Neighbor> best;
  if (k == 0) return best;
  best.reserve(k + 1);
  search_node(root_, query, k, best);
  for (const std::uint32_t idx : pending_) {
    const Entry& entry = entries_[idx];
    offer(best, k, Neighbor{(entry.position - query).squaredNorm(), entry.id});
  }
  return best;
}

}  // namespace objmap
