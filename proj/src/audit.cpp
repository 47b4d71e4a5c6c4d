#include "bjaudit/audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bjaudit/csv.hpp"
#include "bjaudit/errors.hpp"
#include "bjaudit/rearrange.hpp"

namespace bjaudit {

namespace {

void require_grid(std::span<const double> grid) {
  if (grid.empty()) throw UsageError("audit: empty grid");
  for (double t : grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("audit: grid points must be positive and finite");
  }
}

}  // namespace

double ConstantProvider::resolve(const ApproxParams& p, const QuadratureConfig& quad) const {
  switch (kind_) {
    case ConstantKind::paper_c:
      return c_exact(p);
    case ConstantKind::paper_c_with_factor:
      return std::pow(2.0, 0.5 * (p.s() + 1.0)) * c_exact(p);
    case ConstantKind::paper_bigc_table:
      return c_big(p.theta(), p.q(), BigCVariant::table, quad);
    case ConstantKind::sharp_oracle:
      return p.tau_infinite() ? 1.0 : std::pow(p.s() * p.tau(), 1.0 / p.tau());
    case ConstantKind::unit:
      return 1.0;
  }
  return 1.0;
}

std::string ConstantProvider::name() const {
  switch (kind_) {
    case ConstantKind::paper_c:
      return "paper";
    case ConstantKind::paper_c_with_factor:
      return "paper-with-factor";
    case ConstantKind::paper_bigc_table:
      return "bigc-table";
    case ConstantKind::sharp_oracle:
      return "sharp";
    case ConstantKind::unit:
      return "unit";
  }
  return "unknown";
}

ConstantProvider parse_provider(const std::string& name) {
  for (auto kind : {ConstantKind::paper_c, ConstantKind::paper_c_with_factor, ConstantKind::paper_bigc_table,
                    ConstantKind::sharp_oracle, ConstantKind::unit}) {
    if (ConstantProvider(kind).name() == name) return ConstantProvider(kind);
  }
  throw UsageError("unknown constant provider '" + name + "'");
}

void finalize_report(AuditReport& r) {
  r.margin.resize(r.grid.size());
  r.min_margin.reset();
  r.witness_t.reset();
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    r.margin[i] = r.rhs[i] - r.lhs[i];
    if (!r.min_margin || r.margin[i] < *r.min_margin) {
      r.min_margin = r.margin[i];
      r.witness_t = r.grid[i];
    }
  }
  r.violated = r.min_margin && *r.min_margin < -r.abs_tol;
}

AuditReport audit_jackson(const SimpleFunction& f, const DiscreteMeasureSpace& sp, const ApproxParams& p,
                          const ConstantProvider& provider, std::span<const double> grid, double abs_tol) {
  require_grid(grid);
  const auto rf = decreasing_rearrangement(f, sp);
  const double q_norm = approx_quasinorm(rf, p.s(), p.tau());
  AuditReport r;
  r.inequality_name = "jackson";
  r.params = p;
  r.constant_name = provider.name();
  r.constant = provider.resolve(p);
  r.abs_tol = abs_tol;
  r.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    r.lhs.push_back(eval_step(rf, t));
    r.rhs.push_back(std::pow(t, -p.s()) * r.constant * q_norm);
  }
  finalize_report(r);
  return r;
}

AuditReport audit_bernstein_right(const SimpleFunction& f, const DiscreteMeasureSpace& sp, const ApproxParams& p,
                                  double abs_tol) {
  const auto rf = decreasing_rearrangement(f, sp);
  AuditReport r;
  r.inequality_name = "bernstein-right";
  r.params = p;
  r.constant_name = "paper";
  r.constant = c_exact(p);
  r.abs_tol = abs_tol;
  r.grid = {1.0};
  r.lhs = {r.constant * approx_quasinorm(rf, p.s(), p.tau())};
  r.rhs = {std::pow(lp_norm(f, sp, 0.0), p.s()) * lp_norm(f, sp, kInf)};
  finalize_report(r);
  return r;
}

AuditReport audit_weak_l1(const SimpleFunction& f, const DiscreteMeasureSpace& sp, WeakL1Variant variant,
                          std::span<const double> grid, double abs_tol) {
  require_grid(grid);
  const auto rf = decreasing_rearrangement(f, sp);
  const double l1 = lp_norm(f, sp, 1.0);
  AuditReport r;
  r.inequality_name = "weak-l1";
  r.constant_name = variant == WeakL1Variant::paper_2_over_pi ? "paper-2-over-pi" : "safe-unit";
  r.constant = variant == WeakL1Variant::paper_2_over_pi ? 2.0 / std::numbers::pi : 1.0;
  r.abs_tol = abs_tol;
  r.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    r.lhs.push_back(eval_step(rf, t));
    r.rhs.push_back(r.constant * l1 / t);
  }
  finalize_report(r);
  return r;
}

AuditReport audit_q2(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double theta,
                     std::span<const double> grid, double abs_tol) {
  require_grid(grid);
  const auto p = ApproxParams::from_theta_q(theta, 2.0);
  const auto rf = decreasing_rearrangement(f, sp);
  const double q_norm = approx_quasinorm(rf, p.s(), p.tau());
  AuditReport r;
  r.inequality_name = "q2";
  r.params = p;
  r.constant_name = "bigc-table";
  r.constant = c_big(theta, 2.0, BigCVariant::table);
  r.abs_tol = abs_tol;
  r.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    r.lhs.push_back(eval_step(rf, t));
    r.rhs.push_back(std::pow(t, -p.s()) * r.constant * q_norm);
  }
  finalize_report(r);
  return r;
}

std::vector<double> break_probe_grid(const SimpleFunction& f, const DiscreteMeasureSpace& sp) {
  const auto rf = decreasing_rearrangement(f, sp);
  if (rf.empty()) return {1.0};
  const auto br = rf.breaks();
  std::vector<double> grid;
  for (std::size_t i = 1; i < br.size(); ++i) {
    grid.push_back(0.5 * (br[i - 1] + br[i]));
    grid.push_back(br[i] * (1.0 - 1e-9));
    grid.push_back(br[i] * (1.0 + 1e-9));
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

namespace {

void consider(SearchResult& best, const ApproxParams& p, const ConstantProvider& provider, const AtomTable& inst) {
  const auto grid = break_probe_grid(inst.function, inst.space);
  auto report = audit_jackson(inst.function, inst.space, p, provider, grid);
  ++best.instances_evaluated;
  if (best.worst.empty() || *report.min_margin < *best.worst.min_margin) {
    best.worst = std::move(report);
    best.space = inst.space;
    best.function = inst.function;
  }
}

}  // namespace

SearchResult counterexample_search(const ApproxParams& p, const ConstantProvider& provider,
                                   const RandomAtomsGenerator& gen) {
  SearchResult best;
  std::mt19937_64 rng(gen.seed);
  for (int d = 0; d < gen.draws; ++d) consider(best, p, provider, random_atom_table(rng, gen.n_max));
  return best;
}

SearchResult counterexample_search(const ApproxParams& p, const ConstantProvider& provider,
                                   const IndicatorSweepGenerator& gen) {
  SearchResult best;
  for (int i = 0; i < gen.masses; ++i) {
    const double expo = gen.masses == 1 ? 0.0 : -3.0 + 6.0 * i / (gen.masses - 1);
    const AtomTable inst{DiscreteMeasureSpace(std::vector<double>{std::pow(10.0, expo)}),
                         SimpleFunction(std::vector<double>{1.0})};
    consider(best, p, provider, inst);
  }
  return best;
}

void write_report_csv(std::ostream& out, const AuditReport& r) {
  out << "t,lhs,rhs,margin\n";
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    out << csv::format_double(r.grid[i]) << ',' << csv::format_double(r.lhs[i]) << ','
        << csv::format_double(r.rhs[i]) << ',' << csv::format_double(r.margin[i]) << '\n';
  }
}

}  // namespace bjaudit
