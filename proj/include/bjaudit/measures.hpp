#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <span>
#include <string>
#include <vector>

namespace bjaudit {

/// Finitely many atoms with strictly positive, finite masses.
class DiscreteMeasureSpace {
 public:
  DiscreteMeasureSpace() = default;
  /// Atom ids default to "0", "1", ...
  explicit DiscreteMeasureSpace(std::vector<double> weights);
  DiscreteMeasureSpace(std::vector<std::string> atom_ids, std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::string> atom_ids() const noexcept { return ids_; }
  double total_mass() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> weights_;
};

/// Magnitudes |f(x)| of a function on a discrete space. The optional support
/// threshold eps makes lp_norm(., 0) count atoms with |f| > eps instead of |f| > 0.
class SimpleFunction {
 public:
  SimpleFunction() = default;
  explicit SimpleFunction(std::vector<double> magnitudes, double support_threshold = 0.0);

  std::size_t size() const noexcept { return magnitudes_.size(); }
  std::span<const double> magnitudes() const noexcept { return magnitudes_; }
  double support_threshold() const noexcept { return support_threshold_; }

 private:
  std::vector<double> magnitudes_;
  double support_threshold_ = 0.0;
};

/// Exponent for lp_norm: any p in (0, inf), or the two endpoint regimes 0 and inf.
/// p = 0 is the support measure, p = inf the maximum.
double lp_norm(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double p);

/// m(sigma, f): total weight of atoms with |f| > sigma.
double distribution_function(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double sigma);

/// Density sampled at cell midpoints; compiles to a discrete space by the midpoint rule.
struct SampledDensitySpace {
  std::vector<double> grid;
  std::vector<double> cell_widths;
  std::vector<double> density;

  /// Weights density * width; zero-weight cells are dropped.
  DiscreteMeasureSpace compile() const;
  /// Samples g at the midpoints of the cells that survive compile(), in the same order.
  SimpleFunction sample(const std::function<double(double)>& g, double support_threshold = 0.0) const;
};

/// Uniform cells on (t_lo, t_hi) carrying the standard normal density.
SampledDensitySpace gaussian_measure_space(double t_lo, double t_hi, int n_cells);

struct AtomTable {
  DiscreteMeasureSpace space;
  SimpleFunction function;
};

/// Reads `atom_id,weight,magnitude` rows after a mandatory header line.
AtomTable read_atom_csv(std::istream& in);

void require_aligned(const SimpleFunction& f, const DiscreteMeasureSpace& sp);

}  // namespace bjaudit

#include <cstdint>
#include <random>

namespace bjaudit {

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Random instance with 1..n_max atoms: weights in [0.05, 3), magnitudes mostly
/// in [0, 10) with some exact ties and zeros mixed in.
AtomTable random_atom_table(std::mt19937_64& rng, int n_max);

}  // namespace bjaudit
