#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bjaudit/measures.hpp"
#include "bjaudit/params.hpp"

namespace bjaudit {

enum class ConstantKind {
  paper_c,              // c_{s,tau}
  paper_c_with_factor,  // 2^{(s+1)/2} c_{s,tau}
  paper_bigc_table,     // C_{theta,q} table value
  sharp_oracle,         // (s tau)^{1/tau}, 1 for tau = inf
  unit,                 // 1
};

class ConstantProvider {
 public:
  explicit ConstantProvider(ConstantKind kind) : kind_(kind) {}

  ConstantKind kind() const noexcept { return kind_; }
  double resolve(const ApproxParams& p, const QuadratureConfig& quad = {}) const;
  std::string name() const;

 private:
  ConstantKind kind_;
};

/// Parses the CLI spelling: paper, paper-with-factor, bigc-table, sharp, unit.
ConstantProvider parse_provider(const std::string& name);

inline constexpr double kDefaultAbsTol = 1e-12;

/// Both sides of one inequality on a grid. margin = rhs - lhs, so a
/// nonnegative margin means the inequality holds at that point.
struct AuditReport {
  std::string inequality_name;
  std::optional<ApproxParams> params;
  std::string constant_name;
  double constant = 0.0;
  std::vector<double> grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margin;
  std::optional<double> min_margin;  // empty grid -> no value
  std::optional<double> witness_t;
  bool violated = false;
  double abs_tol = kDefaultAbsTol;

  bool empty() const noexcept { return grid.empty(); }
};

/// Fills margin, min_margin, witness_t and violated from grid/lhs/rhs.
void finalize_report(AuditReport& report);

/// f*(t) <= t^{-s} K Q_{s,tau}(f), K from the provider.
AuditReport audit_jackson(const SimpleFunction& f, const DiscreteMeasureSpace& sp, const ApproxParams& p,
                          const ConstantProvider& provider, std::span<const double> grid,
                          double abs_tol = kDefaultAbsTol);

/// c_{s,tau} Q_{s,tau}(f) <= |f|_0^s |f|_inf, reported at the single grid point t = 1.
AuditReport audit_bernstein_right(const SimpleFunction& f, const DiscreteMeasureSpace& sp, const ApproxParams& p,
                                  double abs_tol = kDefaultAbsTol);

enum class WeakL1Variant { paper_2_over_pi, safe_unit };

/// f*(t) <= K |f|_1 / t with K = 2/pi (paper) or 1 (safe).
AuditReport audit_weak_l1(const SimpleFunction& f, const DiscreteMeasureSpace& sp, WeakL1Variant variant,
                          std::span<const double> grid, double abs_tol = kDefaultAbsTol);

/// f*(t) <= t^{1-1/theta} (sin(pi theta)/(pi theta))^{1/(2 theta)} Q_{s,tau}(f)
/// with s = (1-theta)/theta, tau = 2 theta.
AuditReport audit_q2(const SimpleFunction& f, const DiscreteMeasureSpace& sp, double theta,
                     std::span<const double> grid, double abs_tol = kDefaultAbsTol);

struct RandomAtomsGenerator {
  int n_max = 12;
  std::uint64_t seed = 0;
  int draws = 1000;
};

struct IndicatorSweepGenerator {
  int masses = 25;  // log-spaced masses in [1e-3, 1e3]
};

struct SearchResult {
  AuditReport worst;  // empty when nothing was evaluated
  DiscreteMeasureSpace space;
  SimpleFunction function;
  int instances_evaluated = 0;
};

/// Audits Jackson's inequality on every generated instance, with a grid that
/// approaches each break of f* from the left, and keeps the worst one.
SearchResult counterexample_search(const ApproxParams& p, const ConstantProvider& provider,
                                   const RandomAtomsGenerator& gen);
SearchResult counterexample_search(const ApproxParams& p, const ConstantProvider& provider,
                                   const IndicatorSweepGenerator& gen);

/// Grid probing each break of f* just below and above, plus midpoints.
std::vector<double> break_probe_grid(const SimpleFunction& f, const DiscreteMeasureSpace& sp);

void write_report_csv(std::ostream& out, const AuditReport& report);

}  // namespace bjaudit
