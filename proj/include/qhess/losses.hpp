#pragma once

#include <memory>
#include <span>

#include "qhess/circuit.hpp"
#include "qhess/dataset.hpp"
#include "qhess/statevector.hpp"

namespace qhess {

/// A scalar loss l(f) over a scalar circuit observable f, together with the
/// exact closed forms of l'(f) and l''(f) needed for chain-rule composition
/// of gradients and Hessians.
class Loss {
 public:
  virtual ~Loss() = default;

  /// The observable f extracted from the circuit output state.
  virtual double observable(const StateVector& state) const = 0;
  virtual double value(double f) const = 0;
  virtual double d1(double f) const = 0;
  virtual double d2(double f) const = 0;

  double operator()(const StateVector& state) const { return value(observable(state)); }
};

/// l = 1 - |<target|psi>|^2, in [0, 1]. l' = -1, l'' = 0.
class GlobalFidelityLoss final : public Loss {
 public:
  explicit GlobalFidelityLoss(StateVector target);
  double observable(const StateVector& state) const override;
  double value(double f) const override { return 1.0 - f; }
  double d1(double) const override { return -1.0; }
  double d2(double) const override { return 0.0; }
  const StateVector& target() const { return target_; }

 private:
  StateVector target_;
};

/// Local loss l = 1 - (1/N) sum_i P(qubit i = 0), in [0, 1]. The per-qubit
/// sum is divided by N so the range matches the global loss.
class LocalZLoss final : public Loss {
 public:
  double observable(const StateVector& state) const override;
  double value(double f) const override { return 1.0 - f; }
  double d1(double) const override { return -1.0; }
  double d2(double) const override { return 0.0; }
};

/// Square readout loss l = (<Z>_qubit - y)^2 with label y = +/-1, in [0, 4].
/// l' = 2(f - y), l'' = 2.
class SquareZLoss final : public Loss {
 public:
  SquareZLoss(double label, int qubit = 0) : label_(label), qubit_(qubit) {}
  double observable(const StateVector& state) const override {
    return expectation_z(state, qubit_);
  }
  double value(double f) const override { return (f - label_) * (f - label_); }
  double d1(double f) const override { return 2.0 * (f - label_); }
  double d2(double) const override { return 2.0; }
  double label() const { return label_; }
  int qubit() const { return qubit_; }

 private:
  double label_;
  int qubit_;
};

double global_fidelity_loss(const Circuit& circuit, std::span<const double> params,
                            const StateVector& target);
double local_loss(const Circuit& circuit, std::span<const double> params);
double square_loss(const Circuit& circuit, std::span<const double> params,
                   std::span<const double> x, double y, int readout_qubit = 0);

/// Empirical risk: plain sum (not mean) of square losses over the dataset,
/// accumulated in index order. Throws std::invalid_argument on an empty
/// dataset.
double empirical_risk(const Circuit& circuit, std::span<const double> params,
                      const Dataset& dataset, int readout_qubit = 0);

}  // namespace qhess
