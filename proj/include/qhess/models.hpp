#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qhess/circuit.hpp"
#include "qhess/dataset.hpp"
#include "qhess/linalg.hpp"

namespace qhess {

/// Toy circuit: one RX per qubit, parameter slot i on qubit i, no
/// entanglers. P = N.
Circuit build_toy(int num_qubits);

/// Layered circuit: each layer applies one general rotation R(phi1, phi2,
/// phi3) per qubit, then a CZ ladder on an open chain. Even-indexed layers
/// entangle pairs (0,1), (2,3), ...; odd-indexed layers (1,2), (3,4), ...
/// P = 3 * N * L. Requires N >= 2, L >= 1.
Circuit build_layered(int num_qubits, int num_layers);

/// Reuploading circuit: like the layered circuit, with a data rotation
/// R(x1, x2, 0) on every qubit at the start of every layer. The data
/// rotations carry no trainable parameters: P = 3 * N * L, D = 2.
Circuit build_reuploading(int num_qubits, int num_layers);

enum class TargetKind { Zero, Uniform, Ghz };

TargetKind target_kind_from_string(const std::string& name);

/// |0...0>, the uniform superposition (1/sqrt(2^N)) sum_b |b>, or the GHZ
/// state (|0...0> + |1...1>)/sqrt(2).
StateVector make_target(TargetKind kind, int num_qubits);

/// Seeded uniform draws in [0, 2*pi), one per parameter slot.
std::vector<double> random_circuit_params(int count, std::uint64_t seed);

/// Fully connected 2 -> 12 -> 10 -> 1 network with tanh activations on the
/// hidden layers and the output (so predictions live in (-1, 1), matching
/// the +/-1 labels). 177 parameters in total, stored flat in the order
/// W1 (row-major), b1, W2, b2, W3, b3.
class Ffnn {
 public:
  static constexpr int kInputs = 2;
  static constexpr int kHidden1 = 12;
  static constexpr int kHidden2 = 10;
  static constexpr int kParameterCount =
      kHidden1 * kInputs + kHidden1 + kHidden2 * kHidden1 + kHidden2 + kHidden2 + 1;

  Ffnn();  // all weights zero

  /// Seeded uniform init in [-a, a] with a = 1/sqrt(fan_in) per layer.
  static Ffnn random_init(std::uint64_t seed);

  int parameter_count() const { return kParameterCount; }
  std::span<const double> parameters() const { return params_; }
  void set_parameters(std::span<const double> p);

  double forward(double x1, double x2) const;

  /// Exact reverse-mode gradient of (forward(x) - y)^2 with respect to all
  /// parameters.
  std::vector<double> gradient(double x1, double x2, double y) const;

 private:
  std::vector<double> params_;
};

double ffnn_risk(const Ffnn& net, const Dataset& dataset);
std::vector<double> ffnn_risk_gradient(const Ffnn& net, const Dataset& dataset);

/// Hessian of the whole-dataset risk by central finite differences of the
/// reverse-mode gradient, symmetrized.
Matrix ffnn_hessian(const Ffnn& net, const Dataset& dataset, double eps = 1e-4);

}  // namespace qhess
