#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace objmap {

/// Dynamic 3D point index keyed by caller-supplied ids.
///
/// Points enter through insert() and move through update(); removal is not
/// needed by the store. Internally a kd-tree is rebuilt when enough entries
/// have been added or moved since the last build; fresh entries wait in a
/// pending buffer that queries scan linearly, and moved entries leave a dead
/// node behind that queries skip. Results are totally ordered by
/// (squared distance, id), so queries are deterministic even with duplicate
/// positions and match a linear scan exactly.
class KdTreeIndex3D {
 public:
  struct Neighbor {
    double dist_sq = 0.0;
    std::uint64_t id = 0;
  };

  /// Adds a new point. Throws std::invalid_argument if id is already present.
  void insert(std::uint64_t id, const Eigen::Vector3d& position);

  /// Moves an existing point. Throws std::invalid_argument if id is unknown.
  void update(std::uint64_t id, const Eigen::Vector3d& position);

  /// Up to k nearest points by (squared distance, id).
  std::vector<Neighbor> nearest(const Eigen::Vector3d& query,
                                std::size_t k) const;

  std::size_t size() const noexcept { return id_to_entry_.size(); }

 private:
  struct Entry {
    Eigen::Vector3d position;
    std::uint64_t id = 0;
    bool live = true;
  };
  struct Node {
    std::uint32_t entry = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint8_t axis = 0;
  };

  void maybe_rebuild();
  void rebuild();
  std::int32_t build_subtree(std::vector<std::uint32_t>& items,
                             std::size_t lo, std::size_t hi, int depth);
  void search_node(std::int32_t node, const Eigen::Vector3d& query,
                   std::size_t k, std::vector<Neighbor>& best) const;

  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::vector<std::uint32_t> pending_;           // entries not yet in the tree
  std::size_t dead_in_tree_ = 0;                 // stale nodes left by update()
  std::unordered_map<std::uint64_t, std::uint32_t> id_to_entry_;
};

}  // namespace objmap
