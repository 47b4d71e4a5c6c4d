#include "bjaudit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"

namespace bjaudit {

namespace {

std::vector<std::string> default_ids(std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

}  // namespace

// Copies rather than moves: argument evaluation order is unspecified.
DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<double> weights)
    : DiscreteMeasureSpace(default_ids(weights.size()), weights) {}

DiscreteMeasureSpace::DiscreteMeasureSpace(std::vector<std::string> atom_ids, std::vector<double> weights)
    : ids_(std::move(atom_ids)), weights_(std::move(weights)) {
  if (ids_.size() != weights_.size()) throw UsageError("atom id and weight counts differ");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw DomainError("atom " + ids_[i] + ": weight must be positive and finite");
    }
  }
}

double DiscreteMeasureSpace::total_mass() const {
  double m = 0.0;
  for (double w : weights_) m += w;
  return m;
}

SimpleFunction::SimpleFunction(std::vector<double> magnitudes, double support_threshold)
    : magnitudes_(std::move(magnitudes)), support_threshold_(support_threshold) {
  for (std::size_t i = 0; i < magnitudes_.size(); ++i) {
    if (!(magnitudes_[i] >= 0.0) || !std::isfinite(magnitudes_[i])) {
      throw DomainError("magnitude " + std::to_string(i) + " must be finite and nonnegative");
    }
  }
  if (!(support_threshold_ >= 0.0)) throw DomainError("support threshold must be nonnegative");
}

void require_aligned(const SimpleFunction& f, const DiscreteMeasureSpace& sp) {
  if (f.size() != sp.size()) {
    throw UsageError("function has " + std::to_string(f.size()) + " values but space has " +
                     std::to_string(sp.size()) + " atoms");
  }
}

double lp_norm(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double p) {
  require_aligned(f, sp);
  if (std::isnan(p) || p < 0.0) throw DomainError("exponent p must be 0, positive, or inf");
  const auto mag = f.magnitudes();
  const auto w = sp.weights();
  if (p == 0.0) {
    double mass = 0.0;
    for (std::size_t i = 0; i < mag.size(); ++i) {
      if (mag[i] > f.support_threshold()) mass += w[i];
    }
    return mass;
  }
  if (std::isinf(p)) {
    double top = 0.0;
    for (double v : mag) top = std::max(top, v);
    return top;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    if (mag[i] > 0.0) sum += w[i] * std::pow(mag[i], p);
  }
  return std::pow(sum, 1.0 / p);
}

double distribution_function(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double sigma) {
  require_aligned(f, sp);
  if (!(sigma >= 0.0)) throw DomainError("sigma must be nonnegative");
  const auto mag = f.magnitudes();
  const auto w = sp.weights();
  // Summed largest magnitude first, the order decreasing_rearrangement accumulates
  // its breaks in, so m(sigma) and the level-set lengths of f* agree bit for bit.
  std::vector<std::size_t> above;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    if (mag[i] > sigma) above.push_back(i);
  }
  std::stable_sort(above.begin(), above.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  double mass = 0.0;
  for (std::size_t i : above) mass += w[i];
  return mass;
}

DiscreteMeasureSpace SampledDensitySpace::compile() const {
  std::vector<std::string> ids;
  std::vector<double> weights;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = density[i] * cell_widths[i];
    if (w > 0.0) {
      ids.push_back(std::to_string(i));
      weights.push_back(w);
    }
  }
  return {std::move(ids), std::move(weights)};
}

SimpleFunction SampledDensitySpace::sample(const std::function<double(double)>& g,
                                           double support_threshold) const {
  std::vector<double> values;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (density[i] * cell_widths[i] > 0.0) values.push_back(std::abs(g(grid[i])));
  }
  return SimpleFunction(std::move(values), support_threshold);
}

SampledDensitySpace gaussian_measure_space(double t_lo, double t_hi, int n_cells) {
  if (!(t_lo < t_hi) || !std::isfinite(t_lo) || !std::isfinite(t_hi)) {
    throw DomainError("gaussian space needs finite t_lo < t_hi");
  }
  if (n_cells < 1) throw DomainError("gaussian space needs at least one cell");
  SampledDensitySpace out;
  const auto n = static_cast<std::size_t>(n_cells);
  out.grid.resize(n);
  out.cell_widths.assign(n, (t_hi - t_lo) / n_cells);
  out.density.resize(n);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < n; ++i) {
    // Interpolate each midpoint from both ends so the last cell stays inside (t_lo, t_hi).
    const double frac = (static_cast<double>(i) + 0.5) / n_cells;
    const double t = t_lo + frac * (t_hi - t_lo);
    out.grid[i] = t;
    out.density[i] = norm * std::exp(-0.5 * t * t);
  }
  return out;
}

AtomTable read_atom_csv(std::istream& in) {
  const auto rows = csv::read_table(in, {"atom_id", "weight", "magnitude"});
  std::vector<std::string> ids;
  std::vector<double> weights;
  std::vector<double> mags;
  for (const auto& row : rows) {
    const double w = csv::parse_double(row, 1);
    const double m = csv::parse_double(row, 2);
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw UsageError("line " + std::to_string(row.line) + ": weight must be positive and finite");
    }
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw UsageError("line " + std::to_string(row.line) + ": magnitude must be nonnegative and finite");
    }
    ids.push_back(row.fields[0]);
    weights.push_back(w);
    mags.push_back(m);
  }
  return {DiscreteMeasureSpace(std::move(ids), std::move(weights)), SimpleFunction(std::move(mags))};
}

}  // namespace bjaudit

namespace bjaudit {

AtomTable random_atom_table(std::mt19937_64& rng, int n_max) {
  if (n_max < 1) throw UsageError("random_atom_table: n_max must be >= 1");
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max));
  std::vector<double> weights;
  std::vector<double> mags;
  for (int i = 0; i < n; ++i) {
    weights.push_back(0.05 + 2.95 * uniform01(rng));
    const double kind = uniform01(rng);
    if (kind < 0.1) {
      mags.push_back(0.0);
    } else if (kind < 0.35) {
      mags.push_back(static_cast<double>(1 + rng() % 5));
    } else {
      mags.push_back(10.0 * uniform01(rng));
    }
  }
  return {DiscreteMeasureSpace(std::move(weights)), SimpleFunction(std::move(mags))};
}

}  // namespace bjaudit
