#pragma once

#include <span>
#include <string>
#include <vector>

#include "bjaudit/rearrange.hpp"

namespace bjaudit {

struct InvGaussParams {
  double amplitude = 10.0;  // C
  double mean = 2.0;        // m
  double shape = 4.0;       // l
};

/// C sqrt(l / (2 pi t^3)) exp(-l (t-m)^2 / (2 m^2 t)) for t > 0, zero otherwise.
double invgauss_density(double t, const InvGaussParams& p);

struct DemoConfig {
  InvGaussParams density;
  double s = 2.0;
  double tau = 2.0;
  double t_max = 10.0;
  int n_cells = 4000;
  std::vector<double> u_grid;
  double refinement_tol = 1e-3;  // relative change of Q under cell doubling
  double tail_tol = 1e-10;       // tail mass on (t_max, 2 t_max) relative to |f|_1
};

struct DemoRow {
  double u = 0.0;
  double f_star = 0.0;
  double e_value = 0.0;
  double jackson_bound = 0.0;
};

struct DemoResult {
  DemoConfig config;
  double c_st = 0.0;
  double quasinorm = 0.0;          // Q_{s,tau}(f) at n_cells
  double quasinorm_refined = 0.0;  // at 2 n_cells
  double refinement_rel_change = 0.0;
  double l1_norm = 0.0;
  double l1_norm_refined = 0.0;
  double tail_rel_mass = 0.0;
  double support_mass = 0.0;
  std::vector<std::string> warnings;
  std::vector<DemoRow> rows;
  StepFunction rearrangement;
  std::vector<double> sample_t;  // cell midpoints
  std::vector<double> sample_f;  // density at the midpoints
};

/// Samples the density under the standard Gaussian measure on (t_max/n_cells, t_max),
/// rearranges it and evaluates f*, E = f*, and u^{-s} c_{s,tau} Q_{s,tau}(f) on u_grid.
/// Refinement or tail-check failures are reported as warnings, not errors.
DemoResult demo_pipeline(const DemoConfig& config);

}  // namespace bjaudit
