#include "qhess/losses.hpp"

#include <stdexcept>

namespace qhess {

GlobalFidelityLoss::GlobalFidelityLoss(StateVector target) : target_(std::move(target)) {}

double GlobalFidelityLoss::observable(const StateVector& state) const {
  return fidelity(state, target_);
}

double LocalZLoss::observable(const StateVector& state) const {
  const int n = state.num_qubits();
  double sum = 0.0;
  for (int q = 0; q < n; ++q) sum += qubit_zero_probability(state, q);
  return sum / n;
}

double global_fidelity_loss(const Circuit& circuit, std::span<const double> params,
                            const StateVector& target) {
  return 1.0 - fidelity(run_circuit(circuit, params), target);
}

double local_loss(const Circuit& circuit, std::span<const double> params) {
  LocalZLoss loss;
  return loss(run_circuit(circuit, params));
}

double square_loss(const Circuit& circuit, std::span<const double> params,
                   std::span<const double> x, double y, int readout_qubit) {
  SquareZLoss loss(y, readout_qubit);
  return loss(run_circuit(circuit, params, x));
}

double empirical_risk(const Circuit& circuit, std::span<const double> params,
                      const Dataset& dataset, int readout_qubit) {
  if (dataset.size() == 0) throw std::invalid_argument("empirical_risk: empty dataset");
  double risk = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i)
    risk += square_loss(circuit, params, dataset.points[i], dataset.labels[i], readout_qubit);
  return risk;
}

}  // namespace qhess
