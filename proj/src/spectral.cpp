#include "bjaudit/spectral.hpp"

#include <cmath>
#include <string>

#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"

namespace bjaudit {

namespace {

constexpr double kResidualTol = 1e-8;
constexpr double kNegligibleWeight = 1e-15;

SimpleFunction sample_on_spectrum(const SpectralModel& m, const std::function<double(double)>& g) {
  std::vector<double> values;
  values.reserve(m.eigenvalues.size());
  for (double lambda : m.eigenvalues) {
    const double v = g(lambda);
    if (!std::isfinite(v)) throw DomainError("function is not finite at eigenvalue " + std::to_string(lambda));
    values.push_back(std::abs(v));
  }
  return SimpleFunction(std::move(values));
}

}  // namespace

DiscreteMeasureSpace SpectralModel::measure_space() const { return DiscreteMeasureSpace(weights); }

SpectralModel spectral_measure(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi) {
  const auto n = h.rows();
  if (n == 0 || h.cols() != n) throw DomainError("spectral_measure: matrix must be square and nonempty");
  if (n > 64) throw DomainError("spectral_measure: at most 64x64 matrices");
  if (psi.size() != n) throw DomainError("spectral_measure: state vector length differs from matrix size");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) throw DomainError("spectral_measure: matrix is not Hermitian");
  if (std::abs(psi.norm() - 1.0) > kHermitianTol) throw DomainError("spectral_measure: state vector is not unit");

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericError("spectral_measure: eigensolver failed", kInf);
  const auto& evals = solver.eigenvalues();
  const auto& evecs = solver.eigenvectors();

  SpectralModel model;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double residual = (h * evecs.col(i) - evals(i) * evecs.col(i)).norm();
    if (residual > kResidualTol) throw NumericError("spectral_measure: eigenpair residual too large", residual);
    const double w = std::norm(evecs.col(i).dot(psi));
    // Eigen returns eigenvalues ascending; merge a degenerate cluster into one atom.
    if (!model.eigenvalues.empty() && evals(i) - model.eigenvalues.back() <= kHermitianTol) {
      model.weights.back() += w;
    } else {
      model.eigenvalues.push_back(evals(i));
      model.weights.push_back(w);
    }
  }
  SpectralModel kept;
  for (std::size_t i = 0; i < model.eigenvalues.size(); ++i) {
    if (model.weights[i] > kNegligibleWeight) {
      kept.eigenvalues.push_back(model.eigenvalues[i]);
      kept.weights.push_back(model.weights[i]);
    }
  }
  return kept;
}

StepFunction spectral_rearrangement(const SpectralModel& m, const std::function<double(double)>& g) {
  return decreasing_rearrangement(sample_on_spectrum(m, g), m.measure_space());
}

AuditReport audit_spectral_bound(const SpectralModel& m, const std::function<double(double)>& g,
                                 WeakL1Variant variant, std::span<const double> grid) {
  auto report = audit_weak_l1(sample_on_spectrum(m, g), m.measure_space(), variant, grid);
  report.inequality_name = "spectral";
  return report;
}

Eigen::MatrixXcd read_matrix_csv(std::istream& in) {
  const auto rows = csv::read_table(in, {"row", "col", "re", "im"});
  const auto n = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
  if (n == 0 || static_cast<std::size_t>(n * n) != rows.size()) {
    throw UsageError("matrix CSV must hold n^2 entries, got " + std::to_string(rows.size()));
  }
  Eigen::MatrixXcd h(n, n);
  std::vector<bool> seen(static_cast<std::size_t>(n * n), false);
  for (const auto& row : rows) {
    const long long r = csv::parse_int(row, 0);
    const long long c = csv::parse_int(row, 1);
    if (r < 0 || r >= n || c < 0 || c >= n) throw UsageError("line " + std::to_string(row.line) + ": index out of range");
    const auto slot = static_cast<std::size_t>(r * n + c);
    if (seen[slot]) throw UsageError("line " + std::to_string(row.line) + ": duplicate entry");
    seen[slot] = true;
    h(r, c) = {csv::parse_double(row, 2), csv::parse_double(row, 3)};
  }
  return h;
}

Eigen::VectorXcd read_vector_csv(std::istream& in) {
  const auto rows = csv::read_table(in, {"index", "re", "im"});
  const auto n = static_cast<long long>(rows.size());
  if (n == 0) throw UsageError("vector CSV is empty");
  Eigen::VectorXcd psi(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& row : rows) {
    const long long i = csv::parse_int(row, 0);
    if (i < 0 || i >= n) throw UsageError("line " + std::to_string(row.line) + ": index out of range");
    if (seen[static_cast<std::size_t>(i)]) throw UsageError("line " + std::to_string(row.line) + ": duplicate entry");
    seen[static_cast<std::size_t>(i)] = true;
    psi(i) = {csv::parse_double(row, 1), csv::parse_double(row, 2)};
  }
  return psi;
}

}  // namespace bjaudit
