#include "qhess/circuit.hpp"

#include <stdexcept>
#include <string>

namespace qhess {

Gate Gate::rx(int qubit, AngleSlot a) {
  Gate g;
  g.kind = GateKind::Rx;
  g.qubit = qubit;
  g.angles = {a, AngleSlot::zero(), AngleSlot::zero()};
  return g;
}

Gate Gate::rot(int qubit, AngleSlot phi1, AngleSlot phi2, AngleSlot phi3) {
  Gate g;
  g.kind = GateKind::Rot;
  g.qubit = qubit;
  g.angles = {phi1, phi2, phi3};
  return g;
}

Gate Gate::cz(int q1, int q2) {
  Gate g;
  g.kind = GateKind::Cz;
  g.qubit = q1;
  g.qubit2 = q2;
  return g;
}

namespace {

int angle_count(GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return 1;
    case GateKind::Rot: return 3;
    case GateKind::Cz: return 0;
  }
  return 0;
}

double resolve(const AngleSlot& slot, std::span<const double> params,
               std::span<const double> data) {
  switch (slot.source) {
    case AngleSlot::Source::Param: return params[slot.index];
    case AngleSlot::Source::Data: return data[slot.index];
    case AngleSlot::Source::Zero: return 0.0;
  }
  return 0.0;
}

}  // namespace

Circuit::Circuit(int num_qubits, int num_params, int num_data, std::vector<Gate> gates)
    : num_qubits_(num_qubits),
      num_params_(num_params),
      num_data_(num_data),
      gates_(std::move(gates)) {
  if (num_qubits_ < 1) throw std::invalid_argument("Circuit: need at least one qubit");
  if (num_params_ < 0 || num_data_ < 0)
    throw std::invalid_argument("Circuit: negative slot count");
  std::vector<int> param_uses(num_params_, 0);
  for (const Gate& g : gates_) {
    if (g.qubit < 0 || g.qubit >= num_qubits_)
      throw std::invalid_argument("Circuit: gate qubit index out of range");
    if (g.kind == GateKind::Cz) {
      if (g.qubit2 < 0 || g.qubit2 >= num_qubits_)
        throw std::invalid_argument("Circuit: CZ qubit index out of range");
      if (g.qubit == g.qubit2) throw std::invalid_argument("Circuit: CZ qubits must differ");
    }
    for (int k = 0; k < angle_count(g.kind); ++k) {
      const AngleSlot& s = g.angles[k];
      if (s.source == AngleSlot::Source::Param) {
        if (s.index < 0 || s.index >= num_params_)
          throw std::invalid_argument("Circuit: parameter slot out of range");
        ++param_uses[s.index];
      } else if (s.source == AngleSlot::Source::Data) {
        if (s.index < 0 || s.index >= num_data_)
          throw std::invalid_argument("Circuit: data slot out of range");
      }
    }
  }
  for (int i = 0; i < num_params_; ++i)
    if (param_uses[i] != 1)
      throw std::invalid_argument("Circuit: parameter slot " + std::to_string(i) +
                                  " referenced " + std::to_string(param_uses[i]) +
                                  " times (each slot must appear exactly once)");
}

namespace {

void check_inputs(const Circuit& c, std::span<const double> params, std::span<const double> data) {
  if (static_cast<int>(params.size()) != c.num_params())
    throw std::invalid_argument("run_circuit: expected " + std::to_string(c.num_params()) +
                                " parameters, got " + std::to_string(params.size()));
  if (static_cast<int>(data.size()) != c.num_data_slots())
    throw std::invalid_argument("run_circuit: expected " + std::to_string(c.num_data_slots()) +
                                " data values, got " + std::to_string(data.size()));
}

// Walks the gate program. Rotation factors are applied in circuit order
// (for Rot: RZ(phi3), RY(phi2), RZ(phi1)); after each factor `hook` may act
// on the state, keyed by the factor's angle slot.
template <typename Hook>
void walk(const Circuit& c, StateVector& state, std::span<const double> params,
          std::span<const double> data, Hook&& hook) {
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Rx:
        state.apply_rx(g.qubit, resolve(g.angles[0], params, data));
        hook(state, g.qubit, PauliAxis::X, g.angles[0]);
        break;
      case GateKind::Rot:
        state.apply_rz(g.qubit, resolve(g.angles[2], params, data));
        hook(state, g.qubit, PauliAxis::Z, g.angles[2]);
        state.apply_ry(g.qubit, resolve(g.angles[1], params, data));
        hook(state, g.qubit, PauliAxis::Y, g.angles[1]);
        state.apply_rz(g.qubit, resolve(g.angles[0], params, data));
        hook(state, g.qubit, PauliAxis::Z, g.angles[0]);
        break;
      case GateKind::Cz:
        state.apply_cz(g.qubit, g.qubit2);
        break;
    }
  }
}

}  // namespace

StateVector run_circuit(const Circuit& circuit, std::span<const double> params,
                        std::span<const double> data) {
  check_inputs(circuit, params, data);
  StateVector state(circuit.num_qubits());
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Rx:
        state.apply_rx(g.qubit, resolve(g.angles[0], params, data));
        break;
      case GateKind::Rot:
        state.apply_rot(g.qubit, resolve(g.angles[0], params, data),
                        resolve(g.angles[1], params, data),
                        resolve(g.angles[2], params, data));
        break;
      case GateKind::Cz:
        state.apply_cz(g.qubit, g.qubit2);
        break;
    }
  }
  return state;
}

StateVector state_derivative(const Circuit& circuit, std::span<const double> params,
                             std::span<const double> data, int slot) {
  check_inputs(circuit, params, data);
  if (slot < 0 || slot >= circuit.num_params())
    throw std::invalid_argument("state_derivative: slot out of range");
  StateVector state(circuit.num_qubits());
  walk(circuit, state, params, data,
       [slot](StateVector& s, int qubit, PauliAxis axis, const AngleSlot& a) {
         if (a.source == AngleSlot::Source::Param && a.index == slot)
           s.apply_half_pauli_generator(qubit, axis);
       });
  return state;
}

}  // namespace qhess
