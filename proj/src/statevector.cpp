#include "qhess/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qhess {

namespace {
constexpr cplx kMinusHalfI{0.0, -0.5};
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 30)
    throw std::invalid_argument("StateVector: num_qubits out of range: " +
                                std::to_string(num_qubits));
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = cplx{1.0, 0.0};
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const cplx& a : amps_) s += std::norm(a);
  return s;
}

std::size_t StateVector::stride(int qubit) const {
  // qubit 0 is the most significant bit of the basis index
  return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

void StateVector::check_qubit(int qubit) const {
  if (qubit < 0 || qubit >= num_qubits_)
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(num_qubits_) + " qubits");
}

void StateVector::apply_2x2(int qubit, cplx u00, cplx u01, cplx u10, cplx u11) {
  check_qubit(qubit);
  const std::size_t k = stride(qubit);
  const std::size_t dim = amps_.size();
  // explicit real/imag arithmetic; complex operator* routes through the
  // checked __muldc3 helper and dominates the runtime otherwise
  const double m00r = u00.real(), m00i = u00.imag();
  const double m01r = u01.real(), m01i = u01.imag();
  const double m10r = u10.real(), m10i = u10.imag();
  const double m11r = u11.real(), m11i = u11.imag();
  for (std::size_t base = 0; base < dim; base += 2 * k) {
    for (std::size_t off = 0; off < k; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + k;
      const double a0r = amps_[i0].real(), a0i = amps_[i0].imag();
      const double a1r = amps_[i1].real(), a1i = amps_[i1].imag();
      amps_[i0] = cplx{m00r * a0r - m00i * a0i + m01r * a1r - m01i * a1i,
                       m00r * a0i + m00i * a0r + m01r * a1i + m01i * a1r};
      amps_[i1] = cplx{m10r * a0r - m10i * a0i + m11r * a1r - m11i * a1i,
                       m10r * a0i + m10i * a0r + m11r * a1i + m11i * a1r};
    }
  }
}

void StateVector::apply_rx(int qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_2x2(qubit, cplx{c, 0.0}, cplx{0.0, -s}, cplx{0.0, -s}, cplx{c, 0.0});
}

void StateVector::apply_ry(int qubit, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  apply_2x2(qubit, cplx{c, 0.0}, cplx{-s, 0.0}, cplx{s, 0.0}, cplx{c, 0.0});
}

void StateVector::apply_rz(int qubit, double theta) {
  check_qubit(qubit);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::size_t k = stride(qubit);
  const std::size_t dim = amps_.size();
  for (std::size_t base = 0; base < dim; base += 2 * k) {
    for (std::size_t off = 0; off < k; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + k;
      const double a0r = amps_[i0].real(), a0i = amps_[i0].imag();
      const double a1r = amps_[i1].real(), a1i = amps_[i1].imag();
      amps_[i0] = cplx{c * a0r + s * a0i, c * a0i - s * a0r};
      amps_[i1] = cplx{c * a1r - s * a1i, c * a1i + s * a1r};
    }
  }
}

void StateVector::apply_rot(int qubit, double phi1, double phi2, double phi3) {
  // fused RZ(phi1) RY(phi2) RZ(phi3): one strided pass instead of three
  const double cb = std::cos(phi2 / 2.0);
  const double sb = std::sin(phi2 / 2.0);
  const double sum = 0.5 * (phi1 + phi3);
  const double dif = 0.5 * (phi1 - phi3);
  const cplx u00{cb * std::cos(sum), -cb * std::sin(sum)};
  const cplx u01{-sb * std::cos(dif), sb * std::sin(dif)};
  const cplx u10{sb * std::cos(dif), sb * std::sin(dif)};
  const cplx u11{cb * std::cos(sum), cb * std::sin(sum)};
  apply_2x2(qubit, u00, u01, u10, u11);
}

void StateVector::apply_cz(int q1, int q2) {
  check_qubit(q1);
  check_qubit(q2);
  if (q1 == q2) throw std::invalid_argument("apply_cz: control and target must differ");
  const std::size_t m1 = stride(q1);
  const std::size_t m2 = stride(q2);
  const std::size_t dim = amps_.size();
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & m1) && (i & m2)) amps_[i] = -amps_[i];
}

void StateVector::apply_half_pauli_generator(int qubit, PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      // -(i/2) sigma_x
      apply_2x2(qubit, cplx{0.0, 0.0}, kMinusHalfI, kMinusHalfI, cplx{0.0, 0.0});
      break;
    case PauliAxis::Y:
      // -(i/2) sigma_y = [[0, -1/2], [1/2, 0]]
      apply_2x2(qubit, cplx{0.0, 0.0}, cplx{-0.5, 0.0}, cplx{0.5, 0.0}, cplx{0.0, 0.0});
      break;
    case PauliAxis::Z:
      // -(i/2) sigma_z = diag(-i/2, i/2)
      apply_2x2(qubit, kMinusHalfI, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.5});
      break;
  }
}

void StateVector::scale(cplx s) {
  for (cplx& a : amps_) a *= s;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("inner_product: qubit counts differ");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return cplx{re, im};
}

double fidelity(const StateVector& state, const StateVector& target) {
  return std::norm(inner_product(target, state));
}

double expectation_z(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits())
    throw std::out_of_range("expectation_z: qubit index out of range");
  const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - qubit);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double p = std::norm(state[i]);
    acc += (i & mask) ? -p : p;
  }
  return acc;
}

double qubit_zero_probability(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits())
    throw std::out_of_range("qubit_zero_probability: qubit index out of range");
  const std::size_t mask = std::size_t{1} << (state.num_qubits() - 1 - qubit);
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (!(i & mask)) acc += std::norm(state[i]);
  return acc;
}

}  // namespace qhess
