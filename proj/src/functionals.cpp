#include "bjaudit/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bjaudit/csv.hpp"
#include "bjaudit/rearrange.hpp"

namespace bjaudit {

namespace {

void require_positive_t(double t, const char* who) {
  if (!(t > 0.0)) throw DomainError(std::string(who) + ": t must be positive");
}

struct Line {
  double slope;      // residual^2
  double intercept;  // mass^2
};

double meet(const Line& a, const Line& b) { return (b.intercept - a.intercept) / (a.slope - b.slope); }

}  // namespace

CoupleInstance<std::vector<double>> l0_linf_couple(const DiscreteMeasureSpace& sp) {
  using Vec = std::vector<double>;
  CoupleInstance<Vec> c;
  // Support mass via m(0, |x|), so it is summed in the same order as the breaks of f*.
  c.norm0 = [sp](const Vec& x) {
    if (x.size() != sp.size()) throw UsageError("element not aligned with space");
    Vec mag(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::abs(x[i]);
    return distribution_function(SimpleFunction(std::move(mag)), sp, 0.0);
  };
  c.norm1 = [](const Vec& x) {
    double top = 0.0;
    for (double v : x) top = std::max(top, std::abs(v));
    return top;
  };
  c.add = [](const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b.at(i);
    return out;
  };
  c.subtract = [](const Vec& a, const Vec& b) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b.at(i);
    return out;
  };
  return c;
}

std::vector<std::vector<double>> subset_truncations(const SimpleFunction& f) {
  const std::size_t n = f.size();
  if (n > 20) throw UsageError("subset_truncations: at most 20 atoms");
  const auto mag = f.magnitudes();
  std::vector<std::vector<double>> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) g[i] = mag[i];
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<double>> truncation_family(const SimpleFunction& f) {
  const auto mag = f.magnitudes();
  std::vector<double> levels{0.0};
  levels.insert(levels.end(), mag.begin(), mag.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::vector<double>> out;
  for (double sigma : levels) {
    std::vector<double> g(mag.size(), 0.0);
    for (std::size_t i = 0; i < mag.size(); ++i) {
      if (mag[i] > sigma) g[i] = mag[i];
    }
    out.push_back(std::move(g));
  }
  return out;
}

double e_functional_L0Linf(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t) {
  require_positive_t(t, "e_functional_L0Linf");
  return eval_step(decreasing_rearrangement(f, sp), t);
}

double e_functional_trig(std::span<const TrigCoefficient> coeffs, long long n) {
  if (n < 1) throw DomainError("e_functional_trig: degree bound n must be >= 1");
  double tail = 0.0;
  for (const auto& c : coeffs) {
    if (std::llabs(c.k) >= n) tail += std::norm(c.value);
  }
  return std::sqrt(tail);
}

std::vector<TrigCoefficient> read_trig_csv(std::istream& in) {
  const auto rows = csv::read_table(in, {"k", "re", "im"});
  // Repeated frequencies accumulate.
  std::map<long long, std::complex<double>> by_k;
  for (const auto& row : rows) {
    const long long k = csv::parse_int(row, 0);
    const std::complex<double> z(csv::parse_double(row, 1), csv::parse_double(row, 2));
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw UsageError("line " + std::to_string(row.line) + ": coefficient must be finite");
    }
    by_k[k] += z;
  }
  std::vector<TrigCoefficient> out;
  for (const auto& [k, z] : by_k) out.push_back({k, z});
  return out;
}

std::vector<TruncationSplit> truncation_splits(const SimpleFunction& f, const DiscreteMeasureSpace& sp) {
  require_aligned(f, sp);
  const auto sf = decreasing_rearrangement(f, sp);
  const auto br = sf.breaks();
  const auto v = sf.values();
  // sigma = 0 keeps everything; sigma = v_i keeps the segments above v_i.
  std::vector<TruncationSplit> out;
  out.push_back({0.0, sf.support_end(), 0.0});
  for (std::size_t i = v.size(); i-- > 0;) out.push_back({v[i], br[i], v[i]});
  return out;
}

double k2_functional(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t) {
  require_positive_t(t, "k2_functional");
  double best = kInf;
  for (const auto& split : truncation_splits(f, sp)) best = std::min(best, std::hypot(split.mass, t * split.residual));
  return best;
}

double kinf_functional(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t) {
  require_positive_t(t, "kinf_functional");
  double best = kInf;
  for (const auto& split : truncation_splits(f, sp)) best = std::min(best, std::max(split.mass, t * split.residual));
  return best;
}

double k2_scalar(double t, double z_magnitude) {
  require_positive_t(t, "k2_scalar");
  if (!(z_magnitude >= 0.0)) throw DomainError("k2_scalar: magnitude must be nonnegative");
  if (std::isinf(t)) return z_magnitude;
  return z_magnitude * t / std::sqrt(1.0 + t * t);
}

double interp_quasinorm(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double theta, double q,
                        const QuadratureConfig& quad) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("interp_quasinorm: theta must lie in (0,1)");
  if (!(q > 0.0)) throw DomainError("interp_quasinorm: q must be positive");
  const auto splits = truncation_splits(f, sp);
  if (splits.size() == 1) return 0.0;  // f == 0

  // K_2(t)^2 is the lower envelope, in x = t^2, of the lines mass^2 + residual^2 x.
  // Splits arrive with sigma ascending; walk them by descending slope.
  std::vector<Line> hull;
  for (auto it = splits.rbegin(); it != splits.rend(); ++it) {
    const Line line{it->residual * it->residual, it->mass * it->mass};
    while (hull.size() >= 2 && meet(hull[hull.size() - 2], line) <= meet(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(line);
  }
  // Breakpoints in t between consecutive envelope pieces.
  std::vector<double> knots;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) knots.push_back(std::sqrt(meet(hull[i], hull[i + 1])));

  if (std::isinf(q)) {
    // t^{-2 theta}(m^2 + r^2 t^2) is quasi-convex on each piece, so the sup sits at a knot.
    double best = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const double t = knots[i];
      best = std::max(best, std::pow(t, -theta) * std::sqrt(hull[i].intercept + hull[i].slope * t * t));
    }
    return best;
  }

  using boost::math::quadrature::gauss_kronrod;
  const double tq = theta * q;
  double total = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const double lo = i == 0 ? 0.0 : knots[i - 1];
    const double hi = i + 1 == hull.size() ? kInf : knots[i];
    const double m = std::sqrt(hull[i].intercept);
    const double r = std::sqrt(hull[i].slope);
    if (m == 0.0) {
      // r^q t^{(1-theta) q - 1}
      const double a = (1.0 - theta) * q;
      total += std::pow(r, q) * (std::pow(hi, a) - std::pow(lo, a)) / a;
    } else if (r == 0.0) {
      // m^q t^{-theta q - 1}
      total += std::pow(m, q) * std::pow(lo, -tq) / tq;
    } else {
      auto integrand = [=](double u) {
        const double t = std::exp(u);
        return std::exp(-tq * u) * std::pow(m * m + r * r * t * t, 0.5 * q);
      };
      double err = 0.0;
      const double piece = gauss_kronrod<double, 15>::integrate(integrand, std::log(lo), std::log(hi), quad.max_depth,
                                                                quad.rel_tol, &err);
      if (!std::isfinite(piece) || err > quad.rel_tol * std::abs(piece)) {
        throw NumericError("interp_quasinorm: quadrature did not converge", err / std::abs(piece));
      }
      total += piece;
    }
  }
  return std::pow(total, 1.0 / q);
}

}  // namespace bjaudit
