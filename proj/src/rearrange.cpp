#include "bjaudit/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"

namespace bjaudit {

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (values_.empty()) {
    if (breaks_.size() > 1) throw DomainError("step function: breaks without values");
    breaks_.clear();
    return;
  }
  if (breaks_.size() != values_.size() + 1) throw DomainError("step function: need one more break than values");
  if (breaks_.front() != 0.0) throw DomainError("step function: first break must be 0");
  for (std::size_t i = 1; i < breaks_.size(); ++i) {
    if (!(breaks_[i] > breaks_[i - 1]) || !std::isfinite(breaks_[i])) {
      throw DomainError("step function: breaks must be finite and strictly increasing");
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw DomainError("step function: values must be finite and positive");
    }
    if (i > 0 && values_[i] > values_[i - 1]) throw DomainError("step function: values must be nonincreasing");
  }
}

StepFunction decreasing_rearrangement(const SimpleFunction& f, const DiscreteMeasureSpace& sp) {
  require_aligned(f, sp);
  const auto mag = f.magnitudes();
  const auto w = sp.weights();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < mag.size(); ++i) {
    if (mag[i] > 0.0) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });

  std::vector<double> breaks;
  std::vector<double> values;
  if (order.empty()) return {};
  breaks.push_back(0.0);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double next = cumulative + w[order[k]];
    // An atom lighter than the rounding of the running mass adds no length.
    if (next == cumulative) continue;
    cumulative = next;
    if (!values.empty() && values.back() == mag[order[k]]) {
      breaks.back() = cumulative;  // tie: extend the current segment
    } else {
      values.push_back(mag[order[k]]);
      breaks.push_back(cumulative);
    }
  }
  return {std::move(breaks), std::move(values)};
}

double eval_step(const StepFunction& sf, double t) {
  if (!(t >= 0.0)) throw DomainError("eval_step: t must be nonnegative");
  if (sf.empty()) return 0.0;
  const auto br = sf.breaks();
  // First break strictly greater than t closes the segment containing t.
  const auto it = std::upper_bound(br.begin(), br.end(), t);
  if (it == br.end()) return 0.0;
  return sf.values()[static_cast<std::size_t>(it - br.begin()) - 1];
}

double lp_from_rearrangement(const StepFunction& sf, double p) {
  if (std::isnan(p) || p < 0.0) throw DomainError("exponent p must be 0, positive, or inf");
  if (sf.empty()) return 0.0;
  if (p == 0.0) return sf.support_end();
  if (std::isinf(p)) return sf.values().front();
  const auto br = sf.breaks();
  const auto v = sf.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) sum += std::pow(v[i], p) * (br[i + 1] - br[i]);
  return std::pow(sum, 1.0 / p);
}

double approx_quasinorm(const StepFunction& sf, double s, double tau) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("approx_quasinorm: s must be positive and finite");
  if (!(tau > 0.0)) throw DomainError("approx_quasinorm: tau must be positive");
  if (sf.empty()) return 0.0;
  const auto br = sf.breaks();
  const auto v = sf.values();

  if (std::isinf(tau)) {
    // sup over [t_{i-1}, t_i) of t^s v_i is the left limit v_i t_i^s.
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) best = std::max(best, v[i] * std::pow(br[i + 1], s));
    return best;
  }

  // Segment i contributes v_i^tau (t_i^{st} - t_{i-1}^{st}) / st with st = s*tau.
  // In logs: tau ln v_i + st ln t_i + ln(1 - (t_{i-1}/t_i)^{st}) - ln st.
  const double st = s * tau;
  std::vector<double> logs;
  logs.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double gap = br[i] == 0.0 ? 1.0 : -std::expm1(st * std::log(br[i] / br[i + 1]));
    logs.push_back(tau * std::log(v[i]) + st * std::log(br[i + 1]) + std::log(gap) - std::log(st));
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double l : logs) acc += std::exp(l - top);
  return std::exp((top + std::log(acc)) / tau);
}

double level_set_length(const StepFunction& sf, double sigma) {
  const auto br = sf.breaks();
  const auto v = sf.values();
  double end = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > sigma) end = br[i + 1];
  }
  return end;
}

void write_step_csv(std::ostream& out, const StepFunction& sf) {
  out << "t_break,value\n";
  const auto br = sf.breaks();
  const auto v = sf.values();
  for (std::size_t i = 0; i < v.size(); ++i) out << csv::format_double(br[i]) << ',' << csv::format_double(v[i]) << '\n';
  if (!sf.empty()) out << csv::format_double(br.back()) << ",0\n";
}

}  // namespace bjaudit
