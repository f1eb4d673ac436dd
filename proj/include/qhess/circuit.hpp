#pragma once

#include <array>
#include <span>
#include <vector>

#include "qhess/statevector.hpp"

namespace qhess {

enum class GateKind { Rx, Rot, Cz };

/// Where a rotation angle comes from: a trainable parameter slot, a data
/// slot, or the fixed value 0 (used for the third Euler angle of 2-D data
/// rotations).
struct AngleSlot {
  enum class Source { Param, Data, Zero };
  Source source = Source::Zero;
  int index = 0;

  static AngleSlot param(int i) { return {Source::Param, i}; }
  static AngleSlot data(int i) { return {Source::Data, i}; }
  static AngleSlot zero() { return {Source::Zero, 0}; }
};

struct Gate {
  GateKind kind = GateKind::Rx;
  int qubit = 0;
  int qubit2 = -1;
  std::array<AngleSlot, 3> angles{};  // Rx uses angles[0]; Rot uses {phi1, phi2, phi3}

  static Gate rx(int qubit, AngleSlot a);
  static Gate rot(int qubit, AngleSlot phi1, AngleSlot phi2, AngleSlot phi3);
  static Gate cz(int q1, int q2);
};

/// Ordered gate program over num_params trainable slots and num_data data
/// slots. Evaluation is a pure function of (params, data): identical inputs
/// give bit-identical amplitudes. The constructor validates that qubit
/// indices are in range, CZ endpoints are distinct, and every parameter slot
/// in [0, P) is referenced by exactly one gate angle (no parameter sharing).
class Circuit {
 public:
  Circuit(int num_qubits, int num_params, int num_data, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  int num_params() const { return num_params_; }
  int num_data_slots() const { return num_data_; }
  const std::vector<Gate>& gates() const { return gates_; }

 private:
  int num_qubits_;
  int num_params_;
  int num_data_;
  std::vector<Gate> gates_;
};

/// Applies the circuit to |0...0>. Throws std::invalid_argument when the
/// params or data length does not match the circuit.
StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        std::span<const double> data = {});

/// Analytic d|psi(theta)>/d theta_slot, computed by inserting -(i/2) sigma
/// at the rotation factor that owns the slot. The result is not normalized.
StateVector state_derivative(const Circuit& circuit, std::span<const double> params,
                             std::span<const double> data, int slot);

}  // namespace qhess
