#ifndef PROJCONE_GRID_HPP
#define PROJCONE_GRID_HPP

#include <Eigen/Core>
#include <vector>

#include "projcone/chart_connection.hpp"
#include "projcone/errors.hpp"

namespace projcone {

/// Uniform sampling grid over a box: per_axis points per axis including both
/// endpoints, enumerated row-major (last axis fastest) so downstream maxima
/// are deterministic. Grid operations are capped at 4 dimensions.
inline std::vector<Eigen::VectorXd> make_grid(const Box& box, int per_axis) {
  const int n = box.dims();
  if (per_axis < 2) throw InputError("make_grid: need at least 2 points per axis");
  if (n > 4) throw InputError("make_grid: grid sampling is limited to dimension <= 4");
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(per_axis);
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (std::size_t m = 0; m < total; ++m) {
    Eigen::VectorXd x(n);
    for (int a = 0; a < n; ++a)
      x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * idx[static_cast<std::size_t>(a)] /
                             (per_axis - 1);
    pts.push_back(std::move(x));
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < per_axis) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return pts;
}

}  // namespace projcone

#endif
