#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qhess/losses.hpp"
#include "qhess/models.hpp"
#include "qhess/rng.hpp"

using namespace qhess;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("global fidelity loss against the toy closed form") {
  const StateVector zero1 = make_target(TargetKind::Zero, 1);
  CHECK(global_fidelity_loss(build_toy(1), std::vector<double>{0.0}, zero1) ==
        doctest::Approx(0.0));
  CHECK(global_fidelity_loss(build_toy(1), std::vector<double>{pi}, zero1) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(global_fidelity_loss(build_toy(4), std::vector<double>{pi / 2, pi / 2, 0.0, 0.0},
                             make_target(TargetKind::Zero, 4)) ==
        doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(
      global_fidelity_loss(build_toy(2), std::vector<double>{0.0, 0.0}, StateVector(3)),
      std::invalid_argument);
}

TEST_CASE("local loss is the normalized mean of per-qubit misses") {
  const Circuit toy2 = build_toy(2);
  CHECK(local_loss(toy2, std::vector<double>{0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(local_loss(toy2, std::vector<double>{pi, pi}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(local_loss(toy2, std::vector<double>{pi, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("square loss corners") {
  const Circuit toy = build_toy(1);
  // <Z> = +1 at theta = 0
  CHECK(square_loss(toy, std::vector<double>{0.0}, {}, 1.0) == doctest::Approx(0.0));
  CHECK(square_loss(toy, std::vector<double>{0.0}, {}, -1.0) == doctest::Approx(4.0));
  // <Z> = 0 at theta = pi/2
  CHECK(square_loss(toy, std::vector<double>{pi / 2}, {}, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("loss derivative closed forms match finite differences") {
  const SquareZLoss sq(1.0);
  const GlobalFidelityLoss gl(make_target(TargetKind::Zero, 2));
  const LocalZLoss lc;
  // every loss here is at most quadratic in f, so central differences carry
  // no truncation error and a moderate step keeps rounding below 1e-9
  const double h = 5e-3;
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const double f = rng.uniform(-1.0, 1.0);
    for (const Loss* loss : {static_cast<const Loss*>(&sq), static_cast<const Loss*>(&gl),
                             static_cast<const Loss*>(&lc)}) {
      const double d1_fd = (loss->value(f + h) - loss->value(f - h)) / (2 * h);
      const double d2_fd = (loss->value(f + h) + loss->value(f - h) - 2 * loss->value(f)) / (h * h);
      CHECK(std::abs(loss->d1(f) - d1_fd) < 1e-9);
      CHECK(std::abs(loss->d2(f) - d2_fd) < 1e-9);
    }
  }
}

TEST_CASE("loss ranges on random states") {
  const Circuit c = build_layered(3, 2);
  const GlobalFidelityLoss gl(make_target(TargetKind::Uniform, 3));
  const LocalZLoss lc;
  const SquareZLoss sq(-1.0);
  Rng rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> theta(c.num_params());
    for (double& t : theta) t = rng.uniform(0, 2 * pi);
    const StateVector psi = run_circuit(c, theta);
    const double g = gl(psi);
    const double l = lc(psi);
    const double s = sq(psi);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    CHECK(l >= 0.0);
    CHECK(l <= 1.0);
    CHECK(s >= 0.0);
    CHECK(s <= 4.0);
  }
}

TEST_CASE("empirical risk sums square losses in order") {
  const Circuit c = build_reuploading(2, 1);
  const std::vector<double> theta = random_circuit_params(c.num_params(), 8);

  Dataset empty;
  CHECK_THROWS_AS(empirical_risk(c, theta, empty), std::invalid_argument);

  Dataset one;
  one.points = {{0.3, -0.2}};
  one.labels = {1};
  CHECK(empirical_risk(c, theta, one) ==
        square_loss(c, theta, one.points[0], 1.0));  // single point, bit-exact

  Dataset two = one;
  two.points.push_back({-0.8, 0.5});
  two.labels.push_back(-1);
  // appending one point adds its loss exactly (left-fold accumulation)
  CHECK(empirical_risk(c, theta, two) ==
        empirical_risk(c, theta, one) + square_loss(c, theta, two.points[1], -1.0));

  // set-level additivity within float reassociation noise
  Dataset d1 = generate_circle_dataset(37, 4);
  Dataset d2 = generate_circle_dataset(23, 9);
  Dataset both = d1;
  both.points.insert(both.points.end(), d2.points.begin(), d2.points.end());
  both.labels.insert(both.labels.end(), d2.labels.begin(), d2.labels.end());
  const double lhs = empirical_risk(c, theta, both);
  const double rhs = empirical_risk(c, theta, d1) + empirical_risk(c, theta, d2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
}
