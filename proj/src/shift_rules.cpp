#include "qhess/shift_rules.hpp"

#include <stdexcept>

namespace qhess {

namespace {

std::vector<double> gradient_impl(const ScalarFn& f, std::span<const double> params, double s) {
  const int p = static_cast<int>(params.size());
  std::vector<double> theta(params.begin(), params.end());
  std::vector<double> grad(p, 0.0);
  for (int i = 0; i < p; ++i) {
    const double orig = theta[i];
    theta[i] = orig + s;
    const double plus = f(theta);
    theta[i] = orig - s;
    const double minus = f(theta);
    theta[i] = orig;
    grad[i] = 0.5 * (plus - minus);
  }
  return grad;
}

// Hessian with the base value f(theta) supplied, so callers that already
// evaluated it do not pay for it twice.
Matrix hessian_impl(const ScalarFn& f, std::span<const double> params, double base, double s,
                    bool symmetrize) {
  const int p = static_cast<int>(params.size());
  std::vector<double> theta(params.begin(), params.end());
  Matrix h(p, p);
  for (int i = 0; i < p; ++i) {
    // diagonal: the twice-applied rule collapses to shifts of 2s
    const double orig = theta[i];
    theta[i] = orig + 2.0 * s;
    const double plus = f(theta);
    theta[i] = orig - 2.0 * s;
    const double minus = f(theta);
    theta[i] = orig;
    h(i, i) = 0.25 * (plus + minus - 2.0 * base);
    for (int j = i + 1; j < p; ++j) {
      const double oi = theta[i];
      const double oj = theta[j];
      theta[i] = oi + s;
      theta[j] = oj + s;
      const double pp = f(theta);
      theta[i] = oi - s;
      theta[j] = oj - s;
      const double mm = f(theta);
      theta[i] = oi - s;
      theta[j] = oj + s;
      const double mp = f(theta);
      theta[i] = oi + s;
      theta[j] = oj - s;
      const double pm = f(theta);
      theta[i] = oi;
      theta[j] = oj;
      const double v = 0.25 * (pp + mm - mp - pm);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  if (symmetrize) h.symmetrize();
  return h;
}

}  // namespace

std::vector<double> shift_gradient(const ScalarFn& f, std::span<const double> params,
                                   const ShiftConfig& config) {
  return gradient_impl(f, params, config.shift);
}

Matrix shift_hessian_raw(const ScalarFn& f, std::span<const double> params,
                         const ShiftConfig& config) {
  const double base = f(params);
  return hessian_impl(f, params, base, config.shift, config.symmetrize);
}

std::vector<double> loss_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Loss& loss, std::span<const double> data) {
  const ScalarFn f = [&](std::span<const double> p) {
    return loss.observable(run_circuit(circuit, p, data));
  };
  const double f0 = f(params);
  const double l1 = loss.d1(f0);
  std::vector<double> grad = gradient_impl(f, params, std::numbers::pi / 2.0);
  for (double& g : grad) g *= l1;
  return grad;
}

GradHess loss_hessian(const Circuit& circuit, std::span<const double> params, const Loss& loss,
                      std::span<const double> data, const ShiftConfig& config) {
  long long count = 0;
  const ScalarFn f = [&](std::span<const double> p) {
    ++count;
    return loss.observable(run_circuit(circuit, p, data));
  };
  const int p = static_cast<int>(params.size());
  const double f0 = f(params);
  const std::vector<double> grad_f = gradient_impl(f, params, config.shift);
  const Matrix hess_f = hessian_impl(f, params, f0, config.shift, config.symmetrize);
  const double l1 = loss.d1(f0);
  const double l2 = loss.d2(f0);

  GradHess out;
  out.gradient.resize(p);
  out.hessian = Matrix(p, p);
  for (int i = 0; i < p; ++i) out.gradient[i] = grad_f[i] * l1;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) out.hessian(i, j) = hess_f(i, j) * l1 + grad_f[i] * grad_f[j] * l2;
  out.eval_count = count;  // 2P(P-1) + 4P + 1
  return out;
}

std::vector<double> risk_gradient(const Circuit& circuit, std::span<const double> params,
                                  const Dataset& dataset, int readout_qubit) {
  if (dataset.size() == 0) throw std::invalid_argument("risk_gradient: empty dataset");
  std::vector<double> total(params.size(), 0.0);
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    SquareZLoss loss(dataset.labels[k], readout_qubit);
    const std::vector<double> g = loss_gradient(circuit, params, loss, dataset.points[k]);
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += g[i];
  }
  return total;
}

GradHess risk_hessian(const Circuit& circuit, std::span<const double> params,
                      const Dataset& dataset, int readout_qubit) {
  if (dataset.size() == 0) throw std::invalid_argument("risk_hessian: empty dataset");
  const int p = static_cast<int>(params.size());
  GradHess total;
  total.gradient.assign(p, 0.0);
  total.hessian = Matrix(p, p);
  for (std::size_t k = 0; k < dataset.size(); ++k) {
    SquareZLoss loss(dataset.labels[k], readout_qubit);
    const GradHess one = loss_hessian(circuit, params, loss, dataset.points[k]);
    for (int i = 0; i < p; ++i) total.gradient[i] += one.gradient[i];
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) total.hessian(i, j) += one.hessian(i, j);
    total.eval_count += one.eval_count;
  }
  return total;
}

std::vector<double> fd_gradient_oracle(const ScalarFn& f, std::span<const double> params,
                                       double eps) {
  if (eps <= 0.0) throw std::invalid_argument("fd_gradient_oracle: eps must be positive");
  std::vector<double> theta(params.begin(), params.end());
  std::vector<double> grad(params.size(), 0.0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double orig = theta[i];
    theta[i] = orig + eps;
    const double plus = f(theta);
    theta[i] = orig - eps;
    const double minus = f(theta);
    theta[i] = orig;
    grad[i] = (plus - minus) / (2.0 * eps);
  }
  return grad;
}

Matrix fd_hessian_oracle(const GradientFn& grad, std::span<const double> params, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("fd_hessian_oracle: eps must be positive");
  const int p = static_cast<int>(params.size());
  std::vector<double> theta(params.begin(), params.end());
  Matrix h(p, p);
  for (int j = 0; j < p; ++j) {
    const double orig = theta[j];
    theta[j] = orig + eps;
    const std::vector<double> gp = grad(theta);
    theta[j] = orig - eps;
    const std::vector<double> gm = grad(theta);
    theta[j] = orig;
    for (int i = 0; i < p; ++i) h(i, j) = (gp[i] - gm[i]) / (2.0 * eps);
  }
  h.symmetrize();
  return h;
}

Matrix fd_hessian_oracle(const ScalarFn& f, std::span<const double> params, double eps) {
  return fd_hessian_oracle(
      [&](std::span<const double> p) { return fd_gradient_oracle(f, p, eps); }, params, eps);
}

}  // namespace qhess
