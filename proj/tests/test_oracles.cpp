#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qhess/models.hpp"
#include "qhess/rng.hpp"
#include "qhess/shift_rules.hpp"

using namespace qhess;

TEST_CASE("toy closed-form oracle") {
  const auto report = verify::oracle_toy_closed_form(6, 100, 314);
  CHECK(report.pass);
  CHECK(report.max_error < 1e-10);

  // edge angles agree exactly
  const Circuit toy = build_toy(2);
  const StateVector target = make_target(TargetKind::Zero, 2);
  CHECK(global_fidelity_loss(toy, std::vector<double>{0.0, 0.0}, target) == doctest::Approx(0.0));
  CHECK(global_fidelity_loss(toy, std::vector<double>{std::numbers::pi, std::numbers::pi},
                             target) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("shift rules agree with finite differences on all three circuits") {
  {
    const Circuit toy = build_toy(3);
    const GlobalFidelityLoss loss(make_target(TargetKind::Zero, 3));
    const auto report = verify::oracle_shift_vs_fd(toy, loss, {}, 20, 100, "toy3");
    INFO(report.detail);
    CHECK(report.pass);
  }
  {
    const Circuit layered = build_layered(3, 2);
    const GlobalFidelityLoss loss(make_target(TargetKind::Uniform, 3));
    const auto report = verify::oracle_shift_vs_fd(layered, loss, {}, 5, 101, "layered3x2");
    INFO(report.detail);
    CHECK(report.pass);
  }
  {
    const Circuit re = build_reuploading(3, 2);
    Rng rng(55);
    const std::vector<double> x{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const SquareZLoss loss(-1.0);
    const auto report = verify::oracle_shift_vs_fd(re, loss, x, 5, 102, "reuploading3x2");
    INFO(report.detail);
    CHECK(report.pass);
  }
}

TEST_CASE("gradient variance scaling with qubit count") {
  CHECK(verify::toy_gradient_variance(2) == doctest::Approx(3.0 / 64.0));
  const auto report = verify::oracle_variance_scaling(42);
  INFO(report.detail);
  CHECK(report.pass);
}

TEST_CASE("variance estimates decrease monotonically in N") {
  Rng rng(17);
  double prev = 1e9;
  for (int n : {2, 4, 6, 8}) {
    const Circuit toy = build_toy(n);
    const GlobalFidelityLoss loss(make_target(TargetKind::Zero, n));
    double sum = 0.0, sum2 = 0.0;
    const int draws = 200;
    for (int d = 0; d < draws; ++d) {
      std::vector<double> theta(n);
      for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double g = loss_gradient(toy, theta, loss)[0];
      sum += g;
      sum2 += g * g;
    }
    const double var = (sum2 - sum * sum / draws) / (draws - 1);
    CHECK(var < prev);
    prev = var;
  }
}

TEST_CASE("report formatting") {
  verify::OracleReport r;
  r.name = "demo";
  r.max_error = 1e-12;
  r.tolerance = 1e-10;
  r.pass = true;
  const std::string json = verify::reports_to_json(std::vector<verify::OracleReport>{r});
  CHECK(json.find("\"name\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"pass\": true") != std::string::npos);
}
