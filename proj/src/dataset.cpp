#include "qhess/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qhess/rng.hpp"

namespace qhess {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Dataset generate_circle_dataset(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_circle_dataset: n must be >= 1");
  Dataset d;
  d.seed = seed;
  d.points.reserve(n);
  d.labels.reserve(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x1 = rng.uniform(-1.0, 1.0);
    const double x2 = rng.uniform(-1.0, 1.0);
    d.points.push_back({x1, x2});
    d.labels.push_back(circle_label(x1, x2));
  }
  return d;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& dataset, double fraction,
                                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("train_test_split: fraction must be in (0, 1)");
  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.next_below(i + 1);
    std::swap(order[i], order[j]);
  }
  const auto cut = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  Dataset first, second;
  first.seed = dataset.seed;
  second.seed = dataset.seed;
  for (std::size_t k = 0; k < n; ++k) {
    Dataset& dst = (k < cut) ? first : second;
    dst.points.push_back(dataset.points[order[k]]);
    dst.labels.push_back(dataset.labels[order[k]]);
  }
  return {first, second};
}

std::string dataset_to_csv(const Dataset& dataset) {
  std::string out = "x1,x2,label\n";
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    out += fmt17(dataset.points[i][0]);
    out += ',';
    out += fmt17(dataset.points[i][1]);
    out += ',';
    out += std::to_string(dataset.labels[i]);
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(std::istream& in) {
  Dataset d;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("x1,", 0) == 0) continue;
    std::istringstream ss(line);
    std::string cell;
    double x1 = 0.0, x2 = 0.0;
    int label = 0;
    if (!std::getline(ss, cell, ',')) continue;
    x1 = std::stod(cell);
    if (!std::getline(ss, cell, ',')) throw std::invalid_argument("dataset csv: bad row: " + line);
    x2 = std::stod(cell);
    if (!std::getline(ss, cell, ',')) throw std::invalid_argument("dataset csv: bad row: " + line);
    label = std::stoi(cell);
    d.points.push_back({x1, x2});
    d.labels.push_back(label);
  }
  return d;
}

PredictionGrid prediction_map(const std::function<double(double, double)>& model, int resolution) {
  if (resolution < 2) throw std::invalid_argument("prediction_map: resolution must be >= 2");
  PredictionGrid grid;
  grid.resolution = resolution;
  grid.values.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) grid.values.push_back(model(grid.coord(i), grid.coord(j)));
  return grid;
}

}  // namespace qhess
