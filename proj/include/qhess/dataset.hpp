#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <utility>
#include <vector>

namespace qhess {

/// Squared radius of the class boundary. The disk x1^2 + x2^2 < 2/pi has
/// area 2 inside the [-1,1]^2 square of area 4, so labels are balanced.
inline constexpr double kCircleRadiusSquared = 2.0 / std::numbers::pi;

/// -1 strictly inside the disk, +1 on the boundary and outside.
inline int circle_label(double x1, double x2) {
  return (x1 * x1 + x2 * x2 < kCircleRadiusSquared) ? -1 : +1;
}

/// Labeled 2-D points in [-1,1]^2 for the circle classification task.
struct Dataset {
  std::vector<std::array<double, 2>> points;
  std::vector<int> labels;  // each +1 or -1
  std::uint64_t seed = 0;

  std::size_t size() const { return points.size(); }
};

/// Draws n points uniformly from [-1,1]^2 with the seeded generator from
/// rng.hpp and labels them by the radius rule. Same seed, same bytes.
/// Throws std::invalid_argument when n < 1.
Dataset generate_circle_dataset(int n, std::uint64_t seed);

/// Deterministic seeded shuffle, then split: the first round(n * fraction)
/// points form the first half. Throws when fraction is outside (0, 1).
std::pair<Dataset, Dataset> train_test_split(const Dataset& dataset, double fraction,
                                             std::uint64_t seed);

/// CSV body `x1,x2,label` with 17-significant-digit floats (lossless
/// round-trip of 64-bit values). No header comments; callers prepend them.
std::string dataset_to_csv(const Dataset& dataset);
Dataset dataset_from_csv(std::istream& in);

/// Uniform grid of model outputs over [-1,1]^2, inclusive on both ends.
struct PredictionGrid {
  int resolution = 0;
  std::vector<double> values;  // row-major: index i * resolution + j

  double coord(int idx) const { return -1.0 + 2.0 * idx / (resolution - 1); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
};

/// Evaluates `model(x1, x2)` on the grid. Throws when resolution < 2.
PredictionGrid prediction_map(const std::function<double(double, double)>& model, int resolution);

}  // namespace qhess
