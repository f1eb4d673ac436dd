#include "qhess/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qhess {

std::vector<double> Spectrum::eigenvector(int i) const {
  std::vector<double> v(eigenvectors.rows());
  for (int r = 0; r < eigenvectors.rows(); ++r) v[r] = eigenvectors(r, i);
  return v;
}

namespace {

double off_diagonal_frobenius(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p,q), accumulating into v.
void rotate(Matrix& a, Matrix& v, int p, int q) {
  const int n = a.rows();
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double sign = theta >= 0.0 ? 1.0 : -1.0;
  const double t = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const double app = a(p, p);
  const double aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (int r = 0; r < n; ++r) {
    if (r != p && r != q) {
      const double arp = a(r, p);
      const double arq = a(r, q);
      a(r, p) = arp - s * (arq + tau * arp);
      a(p, r) = a(r, p);
      a(r, q) = arq + s * (arp - tau * arq);
      a(q, r) = a(r, q);
    }
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = vrp - s * (vrq + tau * vrp);
    v(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

}  // namespace

Spectrum eigendecompose(const Matrix& h) {
  const int n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("eigendecompose: matrix must be square");
  const double asym_tol = 1e-10 * std::max(1.0, h.max_abs());
  if (h.max_abs_asymmetry() > asym_tol)
    throw std::invalid_argument("eigendecompose: matrix is not symmetric within tolerance");

  Matrix a = h;
  a.symmetrize();
  Matrix v = Matrix::identity(n);
  const double fro = frobenius(a);
  const double target = 1e-12 * fro;

  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = off_diagonal_frobenius(a);
    if (off <= target) break;
    // threshold sweep: skip entries already negligible at this stage
    const double threshold = (sweep < 3) ? 0.2 * off * off / (n * n) : 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (a(p, q) * a(p, q) > threshold) rotate(a, v, p, q);
  }

  // ascending sort, tie-broken by original Jacobi column index
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (a(i, i) != a(j, j)) return a(i, i) < a(j, j);
    return i < j;
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.eigenvalues[k] = a(src, src);
    // sign convention: largest-magnitude component positive
    int imax = 0;
    double vmax = 0.0;
    for (int r = 0; r < n; ++r) {
      const double m = std::abs(v(r, src));
      if (m > vmax) {
        vmax = m;
        imax = r;
      }
    }
    const double flip = v(imax, src) < 0.0 ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = flip * v(r, src);
  }
  return out;
}

const char* to_string(StationaryLabel label) {
  switch (label) {
    case StationaryLabel::Minimum: return "minimum";
    case StationaryLabel::Maximum: return "maximum";
    case StationaryLabel::Saddle: return "saddle";
    case StationaryLabel::Plateau: return "plateau";
    case StationaryLabel::NonStationary: return "non-stationary";
  }
  return "unknown";
}

StationaryClass classify_stationary(std::span<const double> grad, const Spectrum& spectrum,
                                    double tau) {
  StationaryClass out;
  const double spread = spectrum.eigenvalues.empty() ? 0.0 : spectrum.max() - spectrum.min();
  out.tau = tau > 0.0 ? tau : 1e-6 * std::max(1.0, spread);
  out.grad_norm = norm_inf(grad);
  for (double lam : spectrum.eigenvalues) {
    if (lam < -out.tau)
      ++out.n_negative;
    else if (lam > out.tau)
      ++out.n_positive;
    else
      ++out.n_zero;
  }
  if (out.grad_norm > out.tau)
    out.label = StationaryLabel::NonStationary;
  else if (out.n_negative == 0 && out.n_positive > 0)
    out.label = StationaryLabel::Minimum;
  else if (out.n_positive == 0 && out.n_negative > 0)
    out.label = StationaryLabel::Maximum;
  else if (out.n_negative > 0 && out.n_positive > 0)
    out.label = StationaryLabel::Saddle;
  else
    out.label = StationaryLabel::Plateau;
  return out;
}

PerturbationCurve perturbation_scan(const Circuit& circuit, std::span<const double> params,
                                    const Loss& loss, std::span<const double> direction,
                                    std::span<const double> eps_grid,
                                    std::optional<double> eigenvalue,
                                    std::span<const double> data) {
  if (direction.size() != params.size())
    throw std::invalid_argument("perturbation_scan: direction length mismatch");
  if (std::abs(norm2(direction) - 1.0) > 1e-10)
    throw std::invalid_argument("perturbation_scan: direction must be unit norm");

  PerturbationCurve curve;
  curve.base_loss = loss(run_circuit(circuit, params, data));
  curve.eigenvalue = eigenvalue;
  std::vector<double> shifted(params.begin(), params.end());
  for (double eps : eps_grid) {
    for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = params[i] + eps * direction[i];
    curve.epsilons.push_back(eps);
    curve.losses.push_back(eps == 0.0 ? curve.base_loss
                                      : loss(run_circuit(circuit, shifted, data)));
    if (eigenvalue) curve.quadratic.push_back(curve.base_loss + 0.5 * *eigenvalue * eps * eps);
  }
  return curve;
}

std::vector<SpectrumSeriesRow> spectrum_series(const std::vector<SpectrumSnapshot>& snapshots) {
  if (snapshots.empty()) throw std::invalid_argument("spectrum_series: no snapshots");
  std::vector<SpectrumSeriesRow> rows;
  for (const SpectrumSnapshot& snap : snapshots)
    for (std::size_t r = 0; r < snap.spectrum.eigenvalues.size(); ++r)
      rows.push_back({snap.epoch, static_cast<int>(r), snap.spectrum.eigenvalues[r]});
  return rows;
}

}  // namespace qhess
