#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "bjaudit/measures.hpp"

namespace bjaudit {

/// Nonincreasing right-continuous step function on [0, inf): value v_i on
/// [t_{i-1}, t_i), zero on [t_n, inf). Empty means identically zero.
class StepFunction {
 public:
  StepFunction() = default;
  /// breaks = (0, t_1, ..., t_n) strictly increasing, values = (v_1 >= ... >= v_n > 0).
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  bool empty() const noexcept { return values_.empty(); }
  std::size_t segments() const noexcept { return values_.size(); }
  std::span<const double> breaks() const noexcept { return breaks_; }
  std::span<const double> values() const noexcept { return values_; }
  /// Right end of the support, t_n (0 when empty).
  double support_end() const noexcept { return breaks_.empty() ? 0.0 : breaks_.back(); }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

/// f*: atoms sorted by descending magnitude, equal magnitudes merged, zeros dropped.
StepFunction decreasing_rearrangement(const SimpleFunction& f, const DiscreteMeasureSpace& sp);

double eval_step(const StepFunction& sf, double t);

/// (int_0^inf f*(t)^p dt)^{1/p}; p = inf gives the top value, p = 0 the support length.
double lp_from_rearrangement(const StepFunction& sf, double p);

/// Q_{s,tau}(f) = (int_0^inf [t^s f*(t)]^tau dt/t)^{1/tau}, or sup_t t^s f*(t) for tau = inf.
/// Evaluated in closed form per segment, accumulated in log space.
double approx_quasinorm(const StepFunction& sf, double s, double tau);

/// Lebesgue measure of {t : sf(t) > sigma}.
double level_set_length(const StepFunction& sf, double sigma);

/// CSV rows `t_break,value`: one row per segment start plus a closing (t_n, 0) row.
void write_step_csv(std::ostream& out, const StepFunction& sf);

}  // namespace bjaudit
