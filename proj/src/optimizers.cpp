#include "qhess/optimizers.hpp"

#include <cmath>
#include <stdexcept>

#include "qhess/rng.hpp"

namespace qhess {

OptimizerKind optimizer_kind_from_string(const std::string& name) {
  if (name == "gd") return OptimizerKind::Gd;
  if (name == "hessian_lr") return OptimizerKind::HessianLr;
  if (name == "qng") return OptimizerKind::Qng;
  throw std::invalid_argument("unknown optimizer kind: " + name);
}

std::vector<double> gd_step(std::span<const double> params, std::span<const double> grad,
                            double eta) {
  if (eta <= 0.0) throw std::invalid_argument("gd_step: eta must be positive");
  if (grad.size() != params.size()) throw std::invalid_argument("gd_step: length mismatch");
  std::vector<double> next(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) next[i] = params[i] - eta * grad[i];
  return next;
}

double power_iteration_lambda_max(const Matrix& h) {
  const int n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("power_iteration_lambda_max: square matrix only");
  // shift by the infinity norm so the largest signed eigenvalue dominates
  double sigma = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs(h(i, j));
    sigma = std::max(sigma, row);
  }
  if (sigma == 0.0) return 0.0;

  Rng rng(0xA11CEull);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  const double v0 = norm2(v);
  for (double& x : v) x /= v0;

  double lambda = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<double> hv = matvec(h, v);
    lambda = dot(v, hv);
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(hv[i] - lambda * v[i]));
    if (resid <= 1e-8 * std::max(1.0, std::abs(lambda))) return lambda;
    for (int i = 0; i < n; ++i) hv[i] += sigma * v[i];
    const double nrm = norm2(hv);
    if (nrm == 0.0) return 0.0;
    for (int i = 0; i < n; ++i) v[i] = hv[i] / nrm;
  }
  return eigendecompose(h).max();  // non-convergence fallback
}

Matrix fubini_study_metric(const Circuit& circuit, std::span<const double> params) {
  if (circuit.num_data_slots() != 0)
    throw std::invalid_argument("fubini_study_metric: data-free circuits only");
  const int p = circuit.num_params();
  const StateVector psi = run_circuit(circuit, params);
  std::vector<StateVector> dpsi;
  dpsi.reserve(p);
  for (int i = 0; i < p; ++i) dpsi.push_back(state_derivative(circuit, params, {}, i));

  std::vector<cplx> overlap(p);  // <psi|d_i psi>
  for (int i = 0; i < p; ++i) overlap[i] = inner_product(psi, dpsi[i]);

  Matrix g(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      const cplx term = inner_product(dpsi[i], dpsi[j]) - std::conj(overlap[i]) * overlap[j];
      g(i, j) = term.real();
      g(j, i) = term.real();
    }
  return g;
}

std::vector<double> qng_step(const Circuit& circuit, std::span<const double> params,
                             const Loss& loss, double eta, double lambda_reg) {
  if (eta <= 0.0 || lambda_reg <= 0.0)
    throw std::invalid_argument("qng_step: eta and lambda_reg must be positive");
  Matrix g = fubini_study_metric(circuit, params);
  for (int i = 0; i < g.rows(); ++i) g(i, i) += lambda_reg;
  const std::vector<double> grad = loss_gradient(circuit, params, loss);
  const std::vector<double> delta = solve_spd(std::move(g), grad);
  return gd_step(params, delta, eta);
}

std::pair<std::vector<double>, HessianLrCache> hessian_lr_step(
    const Circuit& circuit, std::span<const double> params, const Loss& loss,
    HessianLrCache cache, bool recompute, double eta_cap) {
  if (recompute || !cache.valid) {
    const GradHess gh = loss_hessian(circuit, params, loss);
    cache.lambda_max = power_iteration_lambda_max(gh.hessian);
    cache.valid = true;
  }
  constexpr double kDelta = 1e-8;
  const double eta =
      cache.lambda_max <= kDelta ? eta_cap : std::min(1.0 / cache.lambda_max, eta_cap);
  const std::vector<double> grad = loss_gradient(circuit, params, loss);
  return {gd_step(params, grad, eta), cache};
}

Objective make_circuit_objective(const Circuit& circuit, std::shared_ptr<const Loss> loss) {
  Objective obj;
  obj.loss = [&circuit, loss](std::span<const double> p) {
    return (*loss)(run_circuit(circuit, p));
  };
  obj.gradient = [&circuit, loss](std::span<const double> p) {
    return loss_gradient(circuit, p, *loss);
  };
  obj.hessian = [&circuit, loss](std::span<const double> p) {
    return loss_hessian(circuit, p, *loss);
  };
  obj.metric = [&circuit](std::span<const double> p) { return fubini_study_metric(circuit, p); };
  return obj;
}

Objective make_risk_objective(const Circuit& circuit, const Dataset& dataset, int readout_qubit) {
  Objective obj;
  obj.loss = [&circuit, &dataset, readout_qubit](std::span<const double> p) {
    return empirical_risk(circuit, p, dataset, readout_qubit);
  };
  obj.gradient = [&circuit, &dataset, readout_qubit](std::span<const double> p) {
    return risk_gradient(circuit, p, dataset, readout_qubit);
  };
  obj.hessian = [&circuit, &dataset, readout_qubit](std::span<const double> p) {
    return risk_hessian(circuit, p, dataset, readout_qubit);
  };
  return obj;
}

Objective make_ffnn_objective(const Dataset& dataset) {
  Objective obj;
  obj.loss = [&dataset](std::span<const double> p) {
    Ffnn net;
    net.set_parameters(p);
    return ffnn_risk(net, dataset);
  };
  obj.gradient = [&dataset](std::span<const double> p) {
    Ffnn net;
    net.set_parameters(p);
    return ffnn_risk_gradient(net, dataset);
  };
  obj.hessian = [&dataset](std::span<const double> p) {
    Ffnn net;
    net.set_parameters(p);
    GradHess gh;
    gh.gradient = ffnn_risk_gradient(net, dataset);
    gh.hessian = ffnn_hessian(net, dataset);
    gh.eval_count = 0;  // classical model, no circuit runs
    return gh;
  };
  return obj;
}

int TrainingTrace::epochs_to_loss(double target) const {
  for (const EpochRecord& r : records)
    if (r.loss < target) return r.epoch;
  return records.empty() ? 0 : records.back().epoch + 1;
}

TrainResult train(const Objective& objective, std::vector<double> initial_params,
                  const OptimizerConfig& config) {
  if (config.eta <= 0.0 || config.eta_cap <= 0.0 || config.lambda_reg <= 0.0 ||
      config.recompute_every < 1 || config.epochs < 0)
    throw std::invalid_argument("train: bad optimizer config");
  if (config.kind == OptimizerKind::Qng && !objective.metric)
    throw std::invalid_argument("train: QNG requires a metric");
  if ((config.kind == OptimizerKind::HessianLr || config.snapshot_every > 0) &&
      !objective.hessian)
    throw std::invalid_argument("train: this configuration requires a Hessian");

  TrainResult result;
  result.params = std::move(initial_params);
  HessianLrCache cache;
  constexpr double kDelta = 1e-8;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double loss = objective.loss(result.params);
    if (config.stop_loss > 0.0 && loss < config.stop_loss) {
      const std::vector<double> grad = objective.gradient(result.params);
      result.trace.records.push_back({epoch, loss, norm2(grad), 0.0});
      return result;  // target reached; no step taken
    }

    GradHess gh;
    bool have_hessian = false;
    const bool want_snapshot = config.snapshot_every > 0 && epoch % config.snapshot_every == 0;
    const bool want_hlr_recompute =
        config.kind == OptimizerKind::HessianLr &&
        (epoch % config.recompute_every == 0 || !cache.valid);
    if (want_snapshot || want_hlr_recompute) {
      gh = objective.hessian(result.params);
      have_hessian = true;
    }
    if (want_snapshot) result.trace.snapshots.push_back({epoch, eigendecompose(gh.hessian)});

    const std::vector<double> grad =
        have_hessian ? gh.gradient : objective.gradient(result.params);
    double eta = config.eta;
    std::vector<double> step = grad;
    switch (config.kind) {
      case OptimizerKind::Gd:
        break;
      case OptimizerKind::HessianLr: {
        if (want_hlr_recompute) {
          cache.lambda_max = power_iteration_lambda_max(gh.hessian);
          cache.valid = true;
        }
        eta = cache.lambda_max <= kDelta ? config.eta_cap
                                         : std::min(1.0 / cache.lambda_max, config.eta_cap);
        break;
      }
      case OptimizerKind::Qng: {
        Matrix g = objective.metric(result.params);
        for (int i = 0; i < g.rows(); ++i) g(i, i) += config.lambda_reg;
        step = solve_spd(std::move(g), grad);
        break;
      }
    }
    result.trace.records.push_back({epoch, loss, norm2(grad), eta});
    result.params = gd_step(result.params, step, eta);
  }

  const double final_loss = objective.loss(result.params);
  const std::vector<double> final_grad = objective.gradient(result.params);
  result.trace.records.push_back({config.epochs, final_loss, norm2(final_grad), 0.0});
  if (config.snapshot_every > 0) {
    const GradHess gh = objective.hessian(result.params);
    result.trace.snapshots.push_back({config.epochs, eigendecompose(gh.hessian)});
  }
  return result;
}

}  // namespace qhess
