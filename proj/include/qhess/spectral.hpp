#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qhess/circuit.hpp"
#include "qhess/linalg.hpp"
#include "qhess/losses.hpp"

namespace qhess {

/// Full eigendecomposition of a symmetric matrix. Eigenvalues are sorted
/// ascending; column i of `eigenvectors` pairs with eigenvalues[i].
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  double min() const { return eigenvalues.front(); }
  double max() const { return eigenvalues.back(); }
  std::vector<double> eigenvector(int i) const;
};

/// Cyclic Jacobi with threshold sweeps. Converges when the off-diagonal
/// Frobenius norm falls below 1e-12 * ||H||_F, capped at 100 sweeps.
/// Deterministic ordering: stable sort by eigenvalue with the original
/// Jacobi column index as tie-break, and each eigenvector is flipped so its
/// largest-magnitude component is positive.
/// Throws std::invalid_argument when H is not symmetric within tolerance.
Spectrum eigendecompose(const Matrix& h);

enum class StationaryLabel { Minimum, Maximum, Saddle, Plateau, NonStationary };

const char* to_string(StationaryLabel label);

struct StationaryClass {
  StationaryLabel label = StationaryLabel::NonStationary;
  double grad_norm = 0.0;  // infinity norm
  double tau = 0.0;
  int n_negative = 0;  // eigenvalues < -tau
  int n_zero = 0;      // |eigenvalue| <= tau
  int n_positive = 0;  // eigenvalues > tau
};

/// Classifies a point from its gradient and Hessian spectrum. tau <= 0
/// selects the default 1e-6 * max(1, lambda_max - lambda_min); the relative
/// form matters because plateau spectra shrink by orders of magnitude.
StationaryClass classify_stationary(std::span<const double> grad, const Spectrum& spectrum,
                                    double tau = 0.0);

/// Loss along theta + eps * v for each eps in the grid, plus the quadratic
/// model l(theta) + lambda eps^2 / 2 when the matching eigenvalue is given.
struct PerturbationCurve {
  std::vector<double> epsilons;
  std::vector<double> losses;
  std::vector<double> quadratic;  // empty when no eigenvalue was supplied
  double base_loss = 0.0;
  std::optional<double> eigenvalue;
};

/// Throws std::invalid_argument when `direction` is not unit norm within
/// 1e-10.
PerturbationCurve perturbation_scan(const Circuit& circuit, std::span<const double> params,
                                    const Loss& loss, std::span<const double> direction,
                                    std::span<const double> eps_grid,
                                    std::optional<double> eigenvalue = {},
                                    std::span<const double> data = {});

struct SpectrumSnapshot {
  int epoch = 0;
  Spectrum spectrum;
};

struct SpectrumSeriesRow {
  int epoch = 0;
  int rank = 0;  // ascending eigenvalue index
  double eigenvalue = 0.0;
};

/// Long-format (epoch, rank, eigenvalue) table for plotting eigenvalue
/// evolution. Throws std::invalid_argument on an empty snapshot list.
std::vector<SpectrumSeriesRow> spectrum_series(const std::vector<SpectrumSnapshot>& snapshots);

}  // namespace qhess
