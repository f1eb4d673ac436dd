#include "qhess/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qhess/rng.hpp"

namespace qhess {

Circuit build_toy(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("build_toy: need N >= 1");
  std::vector<Gate> gates;
  for (int q = 0; q < num_qubits; ++q) gates.push_back(Gate::rx(q, AngleSlot::param(q)));
  return Circuit(num_qubits, num_qubits, 0, std::move(gates));
}

namespace {

// Open-chain CZ ladder; even layers pair (0,1),(2,3),..., odd layers
// (1,2),(3,4),.... No wraparound pair (N-1, 0).
void append_cz_ladder(std::vector<Gate>& gates, int num_qubits, int layer) {
  for (int q = layer % 2; q + 1 < num_qubits; q += 2) gates.push_back(Gate::cz(q, q + 1));
}

std::vector<Gate> layered_gates(int num_qubits, int num_layers, bool reupload) {
  std::vector<Gate> gates;
  for (int layer = 0; layer < num_layers; ++layer) {
    for (int q = 0; q < num_qubits; ++q) {
      if (reupload)
        gates.push_back(Gate::rot(q, AngleSlot::data(0), AngleSlot::data(1), AngleSlot::zero()));
      const int base = 3 * (layer * num_qubits + q);
      gates.push_back(Gate::rot(q, AngleSlot::param(base), AngleSlot::param(base + 1),
                                AngleSlot::param(base + 2)));
    }
    append_cz_ladder(gates, num_qubits, layer);
  }
  return gates;
}

}  // namespace

Circuit build_layered(int num_qubits, int num_layers) {
  if (num_qubits < 2 || num_layers < 1)
    throw std::invalid_argument("build_layered: need N >= 2 and L >= 1");
  return Circuit(num_qubits, 3 * num_qubits * num_layers, 0,
                 layered_gates(num_qubits, num_layers, false));
}

Circuit build_reuploading(int num_qubits, int num_layers) {
  if (num_qubits < 2 || num_layers < 1)
    throw std::invalid_argument("build_reuploading: need N >= 2 and L >= 1");
  return Circuit(num_qubits, 3 * num_qubits * num_layers, 2,
                 layered_gates(num_qubits, num_layers, true));
}

TargetKind target_kind_from_string(const std::string& name) {
  if (name == "zero") return TargetKind::Zero;
  if (name == "uniform") return TargetKind::Uniform;
  if (name == "ghz") return TargetKind::Ghz;
  throw std::invalid_argument("unknown target kind: " + name);
}

StateVector make_target(TargetKind kind, int num_qubits) {
  StateVector state(num_qubits);
  const std::size_t dim = state.size();
  switch (kind) {
    case TargetKind::Zero:
      break;
    case TargetKind::Uniform: {
      const double a = 1.0 / std::sqrt(static_cast<double>(dim));
      for (std::size_t i = 0; i < dim; ++i) state[i] = cplx{a, 0.0};
      break;
    }
    case TargetKind::Ghz: {
      const double a = 1.0 / std::sqrt(2.0);
      state[0] = cplx{a, 0.0};
      state[dim - 1] = cplx{a, 0.0};
      break;
    }
  }
  return state;
}

std::vector<double> random_circuit_params(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> params(count);
  for (double& p : params) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return params;
}

Ffnn::Ffnn() : params_(kParameterCount, 0.0) {}

Ffnn Ffnn::random_init(std::uint64_t seed) {
  Ffnn net;
  Rng rng(seed);
  std::size_t k = 0;
  const auto fill = [&](int count, int fan_in) {
    const double a = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (int i = 0; i < count; ++i) net.params_[k++] = rng.uniform(-a, a);
  };
  fill(kHidden1 * kInputs + kHidden1, kInputs);
  fill(kHidden2 * kHidden1 + kHidden2, kHidden1);
  fill(kHidden2 + 1, kHidden2);
  return net;
}

void Ffnn::set_parameters(std::span<const double> p) {
  if (static_cast<int>(p.size()) != kParameterCount)
    throw std::invalid_argument("Ffnn::set_parameters: wrong length");
  params_.assign(p.begin(), p.end());
}

namespace {

// flat layout offsets: W1 | b1 | W2 | b2 | W3 | b3
constexpr int kW1 = 0;
constexpr int kB1 = kW1 + Ffnn::kHidden1 * Ffnn::kInputs;
constexpr int kW2 = kB1 + Ffnn::kHidden1;
constexpr int kB2 = kW2 + Ffnn::kHidden2 * Ffnn::kHidden1;
constexpr int kW3 = kB2 + Ffnn::kHidden2;
constexpr int kB3 = kW3 + Ffnn::kHidden2;

struct ForwardPass {
  double a1[Ffnn::kHidden1];
  double a2[Ffnn::kHidden2];
  double out;
};

ForwardPass forward_pass(std::span<const double> w, double x1, double x2) {
  ForwardPass f{};
  for (int i = 0; i < Ffnn::kHidden1; ++i) {
    const double z =
        w[kW1 + i * Ffnn::kInputs] * x1 + w[kW1 + i * Ffnn::kInputs + 1] * x2 + w[kB1 + i];
    f.a1[i] = std::tanh(z);
  }
  for (int i = 0; i < Ffnn::kHidden2; ++i) {
    double z = w[kB2 + i];
    for (int j = 0; j < Ffnn::kHidden1; ++j) z += w[kW2 + i * Ffnn::kHidden1 + j] * f.a1[j];
    f.a2[i] = std::tanh(z);
  }
  double z = w[kB3];
  for (int j = 0; j < Ffnn::kHidden2; ++j) z += w[kW3 + j] * f.a2[j];
  f.out = std::tanh(z);
  return f;
}

}  // namespace

double Ffnn::forward(double x1, double x2) const { return forward_pass(params_, x1, x2).out; }

std::vector<double> Ffnn::gradient(double x1, double x2, double y) const {
  const ForwardPass f = forward_pass(params_, x1, x2);
  std::vector<double> grad(kParameterCount, 0.0);

  // d(out - y)^2 / dz3, with out = tanh(z3)
  const double delta3 = 2.0 * (f.out - y) * (1.0 - f.out * f.out);
  grad[kB3] = delta3;
  for (int j = 0; j < kHidden2; ++j) grad[kW3 + j] = delta3 * f.a2[j];

  double delta2[kHidden2];
  for (int i = 0; i < kHidden2; ++i)
    delta2[i] = delta3 * params_[kW3 + i] * (1.0 - f.a2[i] * f.a2[i]);
  for (int i = 0; i < kHidden2; ++i) {
    grad[kB2 + i] = delta2[i];
    for (int j = 0; j < kHidden1; ++j) grad[kW2 + i * kHidden1 + j] = delta2[i] * f.a1[j];
  }

  double delta1[kHidden1];
  for (int j = 0; j < kHidden1; ++j) {
    double s = 0.0;
    for (int i = 0; i < kHidden2; ++i) s += params_[kW2 + i * kHidden1 + j] * delta2[i];
    delta1[j] = s * (1.0 - f.a1[j] * f.a1[j]);
  }
  for (int j = 0; j < kHidden1; ++j) {
    grad[kB1 + j] = delta1[j];
    grad[kW1 + j * kInputs] = delta1[j] * x1;
    grad[kW1 + j * kInputs + 1] = delta1[j] * x2;
  }
  return grad;
}

double ffnn_risk(const Ffnn& net, const Dataset& dataset) {
  if (dataset.size() == 0) throw std::invalid_argument("ffnn_risk: empty dataset");
  double risk = 0.0;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const double out = net.forward(dataset.points[i][0], dataset.points[i][1]);
    const double d = out - dataset.labels[i];
    risk += d * d;
  }
  return risk;
}

std::vector<double> ffnn_risk_gradient(const Ffnn& net, const Dataset& dataset) {
  if (dataset.size() == 0) throw std::invalid_argument("ffnn_risk_gradient: empty dataset");
  std::vector<double> total(net.parameter_count(), 0.0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const std::vector<double> g =
        net.gradient(dataset.points[i][0], dataset.points[i][1], dataset.labels[i]);
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += g[k];
  }
  return total;
}

Matrix ffnn_hessian(const Ffnn& net, const Dataset& dataset, double eps) {
  const int p = net.parameter_count();
  std::vector<double> theta(net.parameters().begin(), net.parameters().end());
  Ffnn probe;
  Matrix h(p, p);
  for (int j = 0; j < p; ++j) {
    const double orig = theta[j];
    theta[j] = orig + eps;
    probe.set_parameters(theta);
    const std::vector<double> gp = ffnn_risk_gradient(probe, dataset);
    theta[j] = orig - eps;
    probe.set_parameters(theta);
    const std::vector<double> gm = ffnn_risk_gradient(probe, dataset);
    theta[j] = orig;
    for (int i = 0; i < p; ++i) h(i, j) = (gp[i] - gm[i]) / (2.0 * eps);
  }
  h.symmetrize();
  return h;
}

}  // namespace qhess
