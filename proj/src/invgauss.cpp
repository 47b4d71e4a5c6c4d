#include "bjaudit/invgauss.hpp"

#include <cmath>
#include <numbers>

#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"
#include "bjaudit/functionals.hpp"
#include "bjaudit/measures.hpp"
#include "bjaudit/params.hpp"

namespace bjaudit {

double invgauss_density(double t, const InvGaussParams& p) {
  if (!(t > 0.0)) return 0.0;
  const double dev = t - p.mean;
  return p.amplitude * std::sqrt(p.shape / (2.0 * std::numbers::pi * t * t * t)) *
         std::exp(-p.shape * dev * dev / (2.0 * p.mean * p.mean * t));
}

namespace {

struct Compiled {
  SampledDensitySpace sampled;
  DiscreteMeasureSpace space;
  SimpleFunction function;
};

Compiled compile(const InvGaussParams& p, double lo, double hi, int n_cells) {
  Compiled c{gaussian_measure_space(lo, hi, n_cells), {}, {}};
  c.space = c.sampled.compile();
  c.function = c.sampled.sample([&p](double t) { return invgauss_density(t, p); });
  return c;
}

}  // namespace

DemoResult demo_pipeline(const DemoConfig& config) {
  const auto& p = config.density;
  if (!(p.amplitude > 0.0 && p.mean > 0.0 && p.shape > 0.0)) {
    throw DomainError("inverse Gaussian parameters must be positive");
  }
  if (!(config.t_max > 0.0) || config.n_cells < 1) throw DomainError("demo: need t_max > 0 and n_cells >= 1");
  for (double u : config.u_grid) {
    if (!(u > 0.0)) throw DomainError("demo: u grid must be positive");
  }
  const auto params = ApproxParams::from_s_tau(config.s, config.tau);

  DemoResult out;
  out.config = config;
  out.c_st = c_exact(params);

  const auto base = compile(p, config.t_max / config.n_cells, config.t_max, config.n_cells);
  out.rearrangement = decreasing_rearrangement(base.function, base.space);
  out.quasinorm = approx_quasinorm(out.rearrangement, config.s, config.tau);
  out.l1_norm = lp_norm(base.function, base.space, 1.0);
  out.support_mass = out.rearrangement.support_end();
  out.sample_t = base.sampled.grid;
  for (double t : base.sampled.grid) out.sample_f.push_back(invgauss_density(t, p));

  const int doubled = 2 * config.n_cells;
  const auto fine = compile(p, config.t_max / doubled, config.t_max, doubled);
  out.quasinorm_refined = approx_quasinorm(decreasing_rearrangement(fine.function, fine.space), config.s, config.tau);
  out.l1_norm_refined = lp_norm(fine.function, fine.space, 1.0);
  out.refinement_rel_change =
      out.quasinorm == 0.0 ? 0.0 : std::abs(out.quasinorm_refined - out.quasinorm) / std::abs(out.quasinorm);
  if (out.refinement_rel_change > config.refinement_tol) {
    out.warnings.push_back("Q_{s,tau} changed by " + csv::format_double(out.refinement_rel_change) +
                           " (relative) under cell doubling");
  }

  const auto tail = compile(p, config.t_max, 2.0 * config.t_max, config.n_cells);
  const double tail_mass = lp_norm(tail.function, tail.space, 1.0);
  out.tail_rel_mass = out.l1_norm == 0.0 ? 0.0 : tail_mass / out.l1_norm;
  if (out.tail_rel_mass > config.tail_tol) {
    out.warnings.push_back("mass beyond t_max is " + csv::format_double(out.tail_rel_mass) + " of |f|_1");
  }

  for (double u : config.u_grid) {
    DemoRow row;
    row.u = u;
    row.f_star = eval_step(out.rearrangement, u);
    row.e_value = e_functional_L0Linf(base.function, base.space, u);
    row.jackson_bound = std::pow(u, -config.s) * out.c_st * out.quasinorm;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace bjaudit
