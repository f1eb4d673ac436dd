#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qhess/circuit.hpp"
#include "qhess/linalg.hpp"
#include "qhess/losses.hpp"
#include "qhess/models.hpp"
#include "qhess/shift_rules.hpp"
#include "qhess/spectral.hpp"

namespace qhess {

enum class OptimizerKind { Gd, HessianLr, Qng };

OptimizerKind optimizer_kind_from_string(const std::string& name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Gd;
  double eta = 0.5;           // GD / QNG learning rate
  double eta_cap = 2.0;       // H-LR cap on 1/lambda_max
  int recompute_every = 1;    // H-LR Hessian cadence (epochs)
  double lambda_reg = 1e-6;   // QNG metric regularization
  int epochs = 500;
  double stop_loss = 0.0;     // stop once loss < stop_loss (0 disables)
  int snapshot_every = 0;     // spectrum snapshots every k epochs (0 = off)
};

/// theta <- theta - eta * grad.
std::vector<double> gd_step(std::span<const double> params, std::span<const double> grad,
                            double eta);

/// Largest eigenvalue by signed value, via power iteration on H + sigma*I
/// with sigma = ||H||_inf. Tolerance 1e-8 on the residual, at most 10000
/// iterations; falls back to the full Jacobi decomposition if it does not
/// converge.
double power_iteration_lambda_max(const Matrix& h);

/// Fubini-Study metric g_ij = Re[<di psi|dj psi> - <di psi|psi><psi|dj psi>]
/// assembled from analytic state derivatives. Data-free circuits only.
Matrix fubini_study_metric(const Circuit& circuit, std::span<const double> params);

/// One QNG step: solve (g + lambda_reg*I) delta = grad(l), then
/// theta <- theta - eta * delta.
std::vector<double> qng_step(const Circuit& circuit, std::span<const double> params,
                             const Loss& loss, double eta, double lambda_reg);

struct HessianLrCache {
  double lambda_max = 0.0;
  bool valid = false;
};

/// One Hessian-scheduled step: eta_t = min(1/lambda_max, eta_cap), or
/// eta_cap outright when lambda_max <= delta (1e-8), so exact plateaus get
/// the full kick. When `recompute` is false the cached lambda_max is
/// reused.
std::pair<std::vector<double>, HessianLrCache> hessian_lr_step(
    const Circuit& circuit, std::span<const double> params, const Loss& loss,
    HessianLrCache cache, bool recompute, double eta_cap);

/// What a training loop needs to know about a model; `hessian` is required
/// for H-LR and spectrum snapshots, `metric` only for QNG.
struct Objective {
  std::function<double(std::span<const double>)> loss;
  std::function<std::vector<double>(std::span<const double>)> gradient;
  std::function<GradHess(std::span<const double>)> hessian;
  std::function<Matrix(std::span<const double>)> metric;
};

/// State-preparation objective: a loss over a data-free circuit. Supports
/// all three optimizers.
Objective make_circuit_objective(const Circuit& circuit, std::shared_ptr<const Loss> loss);

/// Data-training objective: empirical risk over the dataset (full batch).
/// No QNG metric.
Objective make_risk_objective(const Circuit& circuit, const Dataset& dataset,
                              int readout_qubit = 0);

/// Classical baseline: whole-dataset square-loss risk of the FFNN, with the
/// finite-difference Hessian. No QNG metric.
Objective make_ffnn_objective(const Dataset& dataset);

struct EpochRecord {
  int epoch = 0;
  double loss = 0.0;
  double grad_norm = 0.0;      // Euclidean norm
  double learning_rate = 0.0;  // rate used by the step taken at this epoch
};

/// Per-epoch records (loss recorded before the step) plus a final record
/// for the end state with learning_rate = 0, and optional spectrum
/// snapshots.
struct TrainingTrace {
  std::vector<EpochRecord> records;
  std::vector<SpectrumSnapshot> snapshots;

  /// First epoch whose recorded loss is below `target`, or
  /// records.back().epoch + 1 when never reached.
  int epochs_to_loss(double target) const;
};

struct TrainResult {
  TrainingTrace trace;
  std::vector<double> params;
};

TrainResult train(const Objective& objective, std::vector<double> initial_params,
                  const OptimizerConfig& config);

}  // namespace qhess
