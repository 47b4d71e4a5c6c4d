#pragma once

#include <functional>
#include <istream>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bjaudit/audit.hpp"
#include "bjaudit/measures.hpp"
#include "bjaudit/rearrange.hpp"

namespace bjaudit {

/// Atoms of the spectral measure mu_psi: distinct eigenvalues (ascending) and
/// their weights |<psi, P_lambda psi>|, summing to 1.
struct SpectralModel {
  std::vector<double> eigenvalues;
  std::vector<double> weights;

  DiscreteMeasureSpace measure_space() const;
};

inline constexpr double kHermitianTol = 1e-10;

/// Diagonalizes a Hermitian H (n <= 64) and projects the unit vector psi onto
/// its eigenspaces. Eigenvalues closer than 1e-10 are merged; atoms with
/// weight below 1e-15 are dropped.
SpectralModel spectral_measure(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi);

/// Decreasing rearrangement of lambda -> |g(lambda)| on (sigma(H), mu_psi).
StepFunction spectral_rearrangement(const SpectralModel& m, const std::function<double(double)>& g);

/// Weak-type L^1 bound for lambda -> g(lambda) on the spectral measure space.
AuditReport audit_spectral_bound(const SpectralModel& m, const std::function<double(double)>& g,
                                 WeakL1Variant variant, std::span<const double> grid);

/// Reads `row,col,re,im` (all n^2 entries, 0-based).
Eigen::MatrixXcd read_matrix_csv(std::istream& in);
/// Reads `index,re,im` (0-based, all n entries).
Eigen::VectorXcd read_vector_csv(std::istream& in);

}  // namespace bjaudit
