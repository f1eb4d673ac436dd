#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "json.hpp"
#include "qhess/models.hpp"
#include "qhess/rng.hpp"
#include "qhess/shift_rules.hpp"

namespace qhess::verify {

namespace {

std::vector<double> random_angles(int count, Rng& rng) {
  std::vector<double> theta(count);
  for (double& t : theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return theta;
}

double sample_variance(std::span<const double> xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return var / static_cast<double>(xs.size() - 1);
}

}  // namespace

double toy_gradient_variance(int num_qubits) {
  return (1.0 / 8.0) * std::pow(3.0 / 8.0, num_qubits - 1);
}

OracleReport oracle_toy_closed_form(int num_qubits, int trials, std::uint64_t seed) {
  const Circuit toy = build_toy(num_qubits);
  const StateVector target = make_target(TargetKind::Zero, num_qubits);
  Rng rng(seed);
  double max_err = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<double> theta = random_angles(num_qubits, rng);
    double closed = 1.0;
    for (double a : theta) {
      const double c = std::cos(a / 2.0);
      closed *= c * c;
    }
    const double simulated = global_fidelity_loss(toy, theta, target);
    max_err = std::max(max_err, std::abs(simulated - (1.0 - closed)));
  }
  OracleReport report;
  report.name = "toy_closed_form_N" + std::to_string(num_qubits);
  report.max_error = max_err;
  report.tolerance = 1e-10;
  report.pass = max_err < report.tolerance;
  return report;
}

OracleReport oracle_shift_vs_fd(const Circuit& circuit, const Loss& loss,
                                std::span<const double> data, int trials, std::uint64_t seed,
                                const std::string& name) {
  constexpr double kGradTol = 1e-6;
  constexpr double kHessTol = 1e-5;
  const ScalarFn loss_value = [&](std::span<const double> p) {
    return loss.value(loss.observable(run_circuit(circuit, p, data)));
  };
  const GradientFn shift_grad = [&](std::span<const double> p) {
    return loss_gradient(circuit, p, loss, data);
  };

  Rng rng(seed);
  double grad_err = 0.0;
  double hess_err = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<double> theta = random_angles(circuit.num_params(), rng);

    const std::vector<double> gs = loss_gradient(circuit, theta, loss, data);
    const std::vector<double> gf = fd_gradient_oracle(loss_value, theta);
    for (std::size_t i = 0; i < gs.size(); ++i)
      grad_err = std::max(grad_err, std::abs(gs[i] - gf[i]));

    const Matrix hs = loss_hessian(circuit, theta, loss, data).hessian;
    const Matrix hf = fd_hessian_oracle(shift_grad, theta);
    for (int i = 0; i < hs.rows(); ++i)
      for (int j = 0; j < hs.cols(); ++j)
        hess_err = std::max(hess_err, std::abs(hs(i, j) - hf(i, j)));
  }

  OracleReport report;
  report.name = name;
  report.max_error = std::max(grad_err, hess_err);
  report.tolerance = kHessTol;
  report.pass = grad_err < kGradTol && hess_err < kHessTol;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "grad_err=%.3e (tol %.0e) hess_err=%.3e (tol %.0e)", grad_err,
                kGradTol, hess_err, kHessTol);
  report.detail = buf;
  return report;
}

OracleReport oracle_variance_scaling(std::uint64_t seed) {
  constexpr int kDraws = 200;
  const std::vector<int> sizes{2, 4, 6, 8};
  std::vector<double> variances;

  Rng rng(seed);
  for (int n : sizes) {
    const Circuit toy = build_toy(n);
    const GlobalFidelityLoss loss(make_target(TargetKind::Zero, n));
    std::vector<double> grads(kDraws);
    for (int d = 0; d < kDraws; ++d) {
      const std::vector<double> theta = random_angles(n, rng);
      grads[d] = loss_gradient(toy, theta, loss)[0];
    }
    variances.push_back(sample_variance(grads));
  }

  // least-squares slope of log variance against N
  double mean_n = 0.0, mean_v = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    mean_n += sizes[k];
    mean_v += std::log(variances[k]);
  }
  mean_n /= sizes.size();
  mean_v /= sizes.size();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    num += (sizes[k] - mean_n) * (std::log(variances[k]) - mean_v);
    den += (sizes[k] - mean_n) * (sizes[k] - mean_n);
  }
  const double slope = num / den;

  const double ratio = variances.back() / variances.front();
  const double n2_rel_err = std::abs(variances.front() - toy_gradient_variance(2)) /
                            toy_gradient_variance(2);
  const bool pass = slope < std::log(0.5) && ratio < 0.01 && n2_rel_err < 0.25;

  OracleReport report;
  report.name = "variance_scaling";
  report.max_error = ratio;
  report.tolerance = 0.01;
  report.pass = pass;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "slope=%.3f (< %.3f) var8/var2=%.4g (< 0.01) var2=%.4g rel_err=%.2f (< 0.25)",
                slope, std::log(0.5), ratio, variances.front(), n2_rel_err);
  report.detail = buf;
  return report;
}

void print_report(const OracleReport& report) {
  std::printf("%-28s max_error=%-12.4g tolerance=%-8.0e %s%s%s\n", report.name.c_str(),
              report.max_error, report.tolerance, report.pass ? "PASS" : "FAIL",
              report.detail.empty() ? "" : "  ", report.detail.c_str());
}

std::string reports_to_json(std::span<const OracleReport> reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const OracleReport& r : reports) {
    arr.push_back({{"name", r.name},
                   {"max_error", r.max_error},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass},
                   {"detail", r.detail}});
  }
  return arr.dump(2);
}

}  // namespace qhess::verify
