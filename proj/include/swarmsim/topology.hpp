#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace swarmsim {

/// Directed k-nearest-neighbor sets, one ordered row per agent.
struct NeighborSet {
  int k = 0;
  std::vector<std::int32_t> flat;  // row i holds the k neighbors of agent i,
                                   // nearest first

  int size() const {
    return k > 0 ? static_cast<int>(flat.size()) / k : 0;
  }
  std::span<const std::int32_t> of(int i) const {
    return {flat.data() + static_cast<std::size_t>(i) * k,
            static_cast<std::size_t>(k)};
  }
};

/// Exact k nearest neighbors of every agent by Euclidean distance, ordered
/// ascending, ties broken by lower agent id. The relation is directed.
/// Throws std::invalid_argument unless 1 <= k <= N-1.
NeighborSet knn(const Eigen::Matrix2Xd& positions, int k);

}  // namespace swarmsim
