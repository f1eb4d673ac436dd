#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "qhess/circuit.hpp"
#include "qhess/models.hpp"
#include "qhess/rng.hpp"

using namespace qhess;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("circuit construction validates its gate program") {
  // parameter slot used twice
  std::vector<Gate> shared{Gate::rx(0, AngleSlot::param(0)), Gate::rx(1, AngleSlot::param(0))};
  CHECK_THROWS_AS(Circuit(2, 1, 0, shared), std::invalid_argument);
  // unused slot
  std::vector<Gate> unused{Gate::rx(0, AngleSlot::param(0))};
  CHECK_THROWS_AS(Circuit(2, 2, 0, unused), std::invalid_argument);
  // qubit out of range
  std::vector<Gate> bad_q{Gate::rx(3, AngleSlot::param(0))};
  CHECK_THROWS_AS(Circuit(2, 1, 0, bad_q), std::invalid_argument);
  // cz on one qubit
  std::vector<Gate> bad_cz{Gate::cz(1, 1)};
  CHECK_THROWS_AS(Circuit(2, 0, 0, bad_cz), std::invalid_argument);
  // data slot out of range
  std::vector<Gate> bad_d{Gate::rot(0, AngleSlot::data(2), AngleSlot::zero(), AngleSlot::zero())};
  CHECK_THROWS_AS(Circuit(2, 0, 2, bad_d), std::invalid_argument);
}

TEST_CASE("run_circuit contract checks and base cases") {
  const Circuit toy = build_toy(2);
  CHECK_THROWS_AS(run_circuit(toy, std::vector<double>{0.1}), std::invalid_argument);
  CHECK_THROWS_AS(run_circuit(toy, std::vector<double>{0.1, 0.2}, std::vector<double>{1.0}),
                  std::invalid_argument);

  const StateVector zero = run_circuit(toy, std::vector<double>{0.0, 0.0});
  CHECK(zero[0] == cplx{1.0, 0.0});

  // flipping qubit 0 lands on basis index 2 (qubit 0 is the most
  // significant bit)
  const StateVector flipped = run_circuit(toy, std::vector<double>{pi, 0.0});
  CHECK(std::abs(flipped[2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(flipped.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("run_circuit is deterministic bit for bit") {
  const Circuit c = build_layered(3, 2);
  const std::vector<double> theta = random_circuit_params(c.num_params(), 11);
  const StateVector a = run_circuit(c, theta);
  const StateVector b = run_circuit(c, theta);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.amplitudes().data(), b.amplitudes().data(), a.size() * sizeof(cplx)) == 0);
}

TEST_CASE("state_derivative of a single rx at zero") {
  const Circuit toy = build_toy(1);
  const StateVector d = state_derivative(toy, std::vector<double>{0.0}, {}, 0);
  CHECK(std::abs(d[0]) < 1e-15);
  CHECK(std::abs(d[1] - cplx{0.0, -0.5}) < 1e-15);
  CHECK_THROWS_AS(state_derivative(toy, std::vector<double>{0.0}, {}, 1), std::invalid_argument);
}

TEST_CASE("<psi|dpsi> is purely imaginary") {
  const Circuit c = build_layered(3, 2);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> theta(c.num_params());
    for (double& t : theta) t = rng.uniform(0, 2 * pi);
    const StateVector psi = run_circuit(c, theta);
    for (int slot : {0, 7, c.num_params() - 1}) {
      const StateVector d = state_derivative(c, theta, {}, slot);
      CHECK(std::abs(inner_product(psi, d).real()) < 1e-12);
    }
  }
}

TEST_CASE("state_derivative matches central differences of the state") {
  const double eps = 1e-5;
  Rng rng(77);
  for (const Circuit& c : {build_toy(3), build_layered(3, 2)}) {
    std::vector<double> theta(c.num_params());
    for (double& t : theta) t = rng.uniform(0, 2 * pi);
    for (int slot = 0; slot < c.num_params(); slot += 4) {
      const StateVector d = state_derivative(c, theta, {}, slot);
      std::vector<double> tp = theta, tm = theta;
      tp[slot] += eps;
      tm[slot] -= eps;
      const StateVector sp = run_circuit(c, tp);
      const StateVector sm = run_circuit(c, tm);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const cplx fd = (sp[i] - sm[i]) / (2.0 * eps);
        CHECK(std::abs(fd - d[i]) < 1e-6);
      }
    }
  }
}

TEST_CASE("state_derivative handles data rotations as constants") {
  const Circuit c = build_reuploading(2, 1);
  const std::vector<double> theta = random_circuit_params(c.num_params(), 3);
  const std::vector<double> x{0.4, -0.6};
  const double eps = 1e-5;
  const int slot = 2;
  const StateVector d = state_derivative(c, theta, x, slot);
  std::vector<double> tp = theta, tm = theta;
  tp[slot] += eps;
  tm[slot] -= eps;
  const StateVector sp = run_circuit(c, tp, x);
  const StateVector sm = run_circuit(c, tm, x);
  for (std::size_t i = 0; i < d.size(); ++i)
    CHECK(std::abs((sp[i] - sm[i]) / (2.0 * eps) - d[i]) < 1e-6);
}
