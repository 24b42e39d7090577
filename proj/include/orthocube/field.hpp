#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace orthocube {

/// Node-centered scalar samples on a uniform box grid, x-fastest ordering.
/// spacing[i] * (dims[i] - 1) spans the domain edge along axis i.
struct Field3 {
  std::array<int, 3> dims{};
  std::array<double, 3> spacing{};
  double time = 0.0;
  std::vector<double> values;

  static Field3 zeros(const std::array<int, 3>& dims, const std::array<double, 3>& lengths,
                      double time);

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims[1] + j) * dims[0] + i;
  }
  double at(int i, int j, int k) const { return values[index(i, j, k)]; }
  double& at(int i, int j, int k) { return values[index(i, j, k)]; }
  double length(int axis) const { return spacing[axis] * (dims[axis] - 1); }
};

}  // namespace orthocube
