#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bjaudit/errors.hpp"
#include "bjaudit/measures.hpp"
#include "bjaudit/params.hpp"

namespace bjaudit {

/// Two quasi-normed groups over a common ambient element type.
template <class Element>
struct CoupleInstance {
  std::function<double(const Element&)> norm0;
  std::function<double(const Element&)> norm1;
  std::function<Element(const Element&, const Element&)> add;
  std::function<Element(const Element&, const Element&)> subtract;
  double kappa0 = 1.0;
  double kappa1 = 1.0;
};

/// Whether candidates must satisfy |a0|_0 < t (strict, as in the definition of E)
/// or |a0|_0 <= t (the form used for truncations).
enum class BudgetRule { strict, non_strict };

/// inf{ |a - a0|_1 : a0 in candidates, |a0|_0 < t }. Returns nullopt when no
/// candidate fits the budget.
template <class Element>
std::optional<double> e_functional_bruteforce(const CoupleInstance<Element>& couple, const Element& a, double t,
                                              std::span<const Element> candidates,
                                              BudgetRule rule = BudgetRule::strict) {
  if (candidates.empty()) throw UsageError("e_functional_bruteforce: empty candidate list");
  if (!(t > 0.0)) throw DomainError("e_functional_bruteforce: t must be positive");
  std::optional<double> best;
  for (const auto& a0 : candidates) {
    const double size = couple.norm0(a0);
    const bool fits = rule == BudgetRule::strict ? size < t : size <= t;
    if (!fits) continue;
    const double err = couple.norm1(couple.subtract(a, a0));
    if (!best || err < *best) best = err;
  }
  return best;
}

struct TriangleCheck {
  bool holds0 = true;
  bool holds1 = true;
  // max over pairs of |a+b| / (kappa (|a| + |b|)), per norm
  double worst_ratio0 = 0.0;
  double worst_ratio1 = 0.0;
};

/// Spot-checks |a+b| <= kappa (|a| + |b|) over all ordered pairs of `elements`.
template <class Element>
TriangleCheck check_quasi_triangle(const CoupleInstance<Element>& couple, std::span<const Element> elements) {
  TriangleCheck out;
  for (const auto& a : elements) {
    for (const auto& b : elements) {
      const Element sum = couple.add(a, b);
      const double d0 = couple.kappa0 * (couple.norm0(a) + couple.norm0(b));
      const double d1 = couple.kappa1 * (couple.norm1(a) + couple.norm1(b));
      const double n0 = couple.norm0(sum);
      const double n1 = couple.norm1(sum);
      if (d0 > 0.0) out.worst_ratio0 = std::max(out.worst_ratio0, n0 / d0);
      if (d1 > 0.0) out.worst_ratio1 = std::max(out.worst_ratio1, n1 / d1);
      out.holds0 = out.holds0 && n0 <= d0;
      out.holds1 = out.holds1 && n1 <= d1;
    }
  }
  return out;
}

/// (L^0, L^inf) on a discrete space; elements are value vectors aligned with the atoms.
CoupleInstance<std::vector<double>> l0_linf_couple(const DiscreteMeasureSpace& sp);

/// All 2^n restrictions of f to a subset of atoms (n <= 20).
std::vector<std::vector<double>> subset_truncations(const SimpleFunction& f);

/// Truncations g_sigma = f 1{|f| > sigma} for sigma in {0} and every distinct magnitude.
std::vector<std::vector<double>> truncation_family(const SimpleFunction& f);

/// E(t, f; L^0, L^inf) = f*(t).
double e_functional_L0Linf(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t);

struct TrigCoefficient {
  long long k = 0;
  std::complex<double> value;
};

/// Best L^2(T) error by trigonometric polynomials of degree < n:
/// (sum_{|k| >= n} |a_k|^2)^{1/2}.
double e_functional_trig(std::span<const TrigCoefficient> coeffs, long long n);

/// Reads `k,re,im` rows after a header line.
std::vector<TrigCoefficient> read_trig_csv(std::istream& in);

/// One split of f by truncation: |f0|_0 = mass, |f - f0|_inf = residual.
struct TruncationSplit {
  double sigma = 0.0;
  double mass = 0.0;
  double residual = 0.0;
};

/// Splits for sigma in {0} and each distinct magnitude, sigma ascending.
std::vector<TruncationSplit> truncation_splits(const SimpleFunction& f, const DiscreteMeasureSpace& sp);

/// inf over splits of (|f0|_0^2 + t^2 |f1|_inf^2)^{1/2}, scanned over truncations.
double k2_functional(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t);

/// inf over splits of max(|f0|_0, t |f1|_inf), scanned over truncations.
double kinf_functional(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double t);

/// K_2(t, z) for the scalar couple (C, |.|^2-weighted): |z| t / sqrt(1 + t^2).
double k2_scalar(double t, double z_magnitude);

/// (int_0^inf (t^{-theta} K_2(t,f))^q dt/t)^{1/q}, or sup_t t^{-theta} K_2(t,f) for q = inf.
double interp_quasinorm(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double theta, double q,
                        const QuadratureConfig& quad = {1e-8, 30});

}  // namespace bjaudit
