#pragma once

#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "qhess/circuit.hpp"
#include "qhess/dataset.hpp"
#include "qhess/linalg.hpp"
#include "qhess/losses.hpp"

namespace qhess {

using ScalarFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<std::vector<double>(std::span<const double>)>;

/// Shift-rule configuration. s = pi/2 is exact for every gate generated by
/// an operator with eigenvalues +/- 1/2 (all rotations in this library).
struct ShiftConfig {
  double shift = std::numbers::pi / 2.0;
  bool symmetrize = true;
};

/// Gradient plus Hessian of a loss, with the number of circuit evaluations
/// that produced them.
struct GradHess {
  std::vector<double> gradient;
  Matrix hessian;
  long long eval_count = 0;
};

/// Exact partial derivatives of f by the parameter shift rule,
/// df/dt_i = (1/2) [f(t_i + s) - f(t_i - s)]. Costs exactly 2P evaluations.
std::vector<double> shift_gradient(const ScalarFn& f, std::span<const double> params,
                                   const ShiftConfig& config = {});

/// Exact Hessian of f by applying the shift rule twice. Off-diagonal
/// entries use the 4-term formula over unordered pairs i < j; diagonal
/// entries reduce to (1/4) [f(t_i + 2s) + f(t_i - 2s) - 2 f(t)] and share
/// one base evaluation. Costs exactly 4 * P(P-1)/2 + 2P + 1 evaluations.
Matrix shift_hessian_raw(const ScalarFn& f, std::span<const double> params,
                         const ShiftConfig& config = {});

/// Chain rule, applied once: dl/dt_i = df/dt_i * l'(f).
std::vector<double> loss_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Loss& loss, std::span<const double> data = {});

/// Chain rule, applied twice:
/// d2l/dt_i dt_j = (d2f/dt_i dt_j) l'(f) + (df/dt_i)(df/dt_j) l''(f).
GradHess loss_hessian(const Circuit& circuit, std::span<const double> params, const Loss& loss,
                      std::span<const double> data = {}, const ShiftConfig& config = {});

/// Gradient / Hessian of the empirical risk: per-point terms summed in
/// index order.
std::vector<double> risk_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Dataset& dataset, int readout_qubit = 0);
GradHess risk_hessian(const Circuit& circuit, std::span<const double> params,
                      const Dataset& dataset, int readout_qubit = 0);

/// Central finite difference [f(t_i + eps) - f(t_i - eps)] / (2 eps).
/// Test oracle only; the default eps balances truncation against 64-bit
/// rounding for losses of order 1.
std::vector<double> fd_gradient_oracle(const ScalarFn& f, std::span<const double> params,
                                       double eps = 1e-5);

/// Finite-difference Hessian oracle: column j is
/// [grad(t_j + eps) - grad(t_j - eps)] / (2 eps), then symmetrized.
Matrix fd_hessian_oracle(const GradientFn& grad, std::span<const double> params, double eps = 1e-5);

/// Convenience overload with a fully finite-difference gradient.
Matrix fd_hessian_oracle(const ScalarFn& f, std::span<const double> params, double eps = 1e-5);

}  // namespace qhess
