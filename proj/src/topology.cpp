#include "swarmsim/topology.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace swarmsim {

NeighborSet knn(const Eigen::Matrix2Xd& positions, int k) {
  const int n = static_cast<int>(positions.cols());
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("knn: k=" + std::to_string(k) +
                                " out of range [1, N-1] with N=" +
                                std::to_string(n));

  NeighborSet out;
  out.k = k;
  out.flat.resize(static_cast<std::size_t>(n) * k);

  // Pair ordering sorts by squared distance, then by lower id.
  std::vector<std::pair<double, std::int32_t>> candidates(n - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      candidates[m++] = {(positions.col(j) - positions.col(i)).squaredNorm(),
                         static_cast<std::int32_t>(j)};
    }
    std::partial_sort(candidates.begin(), candidates.begin() + k,
                      candidates.end());
    for (int r = 0; r < k; ++r)
      out.flat[static_cast<std::size_t>(i) * k + r] = candidates[r].second;
  }
  return out;
}

}  // namespace swarmsim
