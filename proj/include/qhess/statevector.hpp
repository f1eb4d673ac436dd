#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qhess {

using cplx = std::complex<double>;

enum class PauliAxis { X, Y, Z };

/// Dense N-qubit statevector: 2^N complex amplitudes in 64-bit floats.
///
/// Conventions (fixed, tests depend on them):
///  - qubit 0 is the most significant bit of the basis-state index, so for
///    N=2 the basis order is |00>, |01>, |10>, |11> with qubit 0 first;
///  - all rotations use the half-angle generator form
///    RA(t) = exp(-i t sigma_A / 2).
///
/// Gates update the amplitudes in place with strided 2x2 (or diagonal)
/// sweeps; no full 2^N x 2^N matrix is ever formed.
class StateVector {
 public:
  /// Initializes |0...0>.
  explicit StateVector(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }

  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm_squared() const;

  /// RX(theta) = [[cos(t/2), -i sin(t/2)], [-i sin(t/2), cos(t/2)]].
  void apply_rx(int qubit, double theta);
  void apply_ry(int qubit, double theta);
  void apply_rz(int qubit, double theta);

  /// General rotation R(phi1, phi2, phi3): applies RZ(phi3), then RY(phi2),
  /// then RZ(phi1), i.e. the unitary RZ(phi1) RY(phi2) RZ(phi3).
  void apply_rot(int qubit, double phi1, double phi2, double phi3);

  /// Controlled-Z: negates every amplitude whose basis state has both
  /// qubits in |1>. Throws std::invalid_argument when q1 == q2.
  void apply_cz(int q1, int q2);

  /// Multiplies the state by -(i/2) sigma_axis on one qubit. This is the
  /// generator insertion used for analytic state derivatives; the result is
  /// not normalized.
  void apply_half_pauli_generator(int qubit, PauliAxis axis);

  /// Multiplies every amplitude by s.
  void scale(cplx s);

 private:
  void apply_2x2(int qubit, cplx u00, cplx u01, cplx u10, cplx u11);
  std::size_t stride(int qubit) const;
  void check_qubit(int qubit) const;

  int num_qubits_;
  std::vector<cplx> amps_;
};

/// <a|b>.
cplx inner_product(const StateVector& a, const StateVector& b);

/// |<target|state>|^2. Throws std::invalid_argument on dimension mismatch.
double fidelity(const StateVector& state, const StateVector& target);

/// <Z> on one qubit, in [-1, 1].
double expectation_z(const StateVector& state, int qubit);

/// Marginal probability of measuring |0> on one qubit; equals (1 + <Z>)/2.
double qubit_zero_probability(const StateVector& state, int qubit);

}  // namespace qhess
