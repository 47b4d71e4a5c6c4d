#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "bjaudit/audit.hpp"
#include "bjaudit/errors.hpp"
#include "bjaudit/json_out.hpp"
#include "bjaudit/rearrange.hpp"

using namespace bjaudit;

namespace {

const DiscreteMeasureSpace kUnit({1.0});
const SimpleFunction kIndicator({1.0});

DiscreteMeasureSpace reference_space() { return DiscreteMeasureSpace({1.0, 2.0, 0.5}); }
SimpleFunction reference_function() { return SimpleFunction({3.0, 1.0, 5.0}); }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
  return g;
}

}  // namespace

TEST_CASE("provider values") {
  const auto p = ApproxParams::from_s_tau(1.0, 1.0);
  CHECK(ConstantProvider(ConstantKind::paper_c).resolve(p) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ConstantProvider(ConstantKind::paper_c_with_factor).resolve(p) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ConstantProvider(ConstantKind::sharp_oracle).resolve(p) == 1.0);
  CHECK(ConstantProvider(ConstantKind::unit).resolve(p) == 1.0);
  CHECK(ConstantProvider(ConstantKind::sharp_oracle).resolve(ApproxParams::from_s_tau(2.0, 3.0)) ==
        doctest::Approx(std::cbrt(6.0)).epsilon(1e-15));
  CHECK(ConstantProvider(ConstantKind::sharp_oracle).resolve(ApproxParams::from_s_tau(2.0, kInf)) == 1.0);
  // theta = 1/2, q = 2: (sin(pi/2) / (pi/2))^{1} = 2/pi.
  CHECK(ConstantProvider(ConstantKind::paper_bigc_table).resolve(ApproxParams::from_theta_q(0.5, 2.0)) ==
        doctest::Approx(2.0 / M_PI).epsilon(1e-15));
  for (const char* name : {"paper", "paper-with-factor", "bigc-table", "sharp", "unit"}) {
    CHECK(parse_provider(name).name() == name);
  }
  CHECK_THROWS_AS(parse_provider("nope"), UsageError);
}

TEST_CASE("Jackson audit examples") {
  const auto p = ApproxParams::from_s_tau(1.0, 1.0);
  const std::vector<double> at09{0.9};
  const auto bad = audit_jackson(kIndicator, kUnit, p, ConstantProvider(ConstantKind::paper_c_with_factor), at09);
  CHECK(bad.margin[0] == doctest::Approx(0.5 / 0.9 - 1.0).epsilon(1e-14));
  CHECK(bad.margin[0] <= -0.44);
  CHECK(bad.violated);
  CHECK(bad.witness_t.value() == 0.9);

  const auto grid = log_grid(1e-3, 1e3, 301);
  const auto good = audit_jackson(kIndicator, kUnit, p, ConstantProvider(ConstantKind::sharp_oracle), grid);
  CHECK(good.min_margin.value() >= 0.0);
  CHECK_FALSE(good.violated);

  const auto zero = audit_jackson(SimpleFunction({0.0}), kUnit, p, ConstantProvider(ConstantKind::paper_c), grid);
  CHECK(zero.min_margin.value() >= 0.0);
  CHECK_FALSE(zero.violated);

  const std::vector<double> empty;
  CHECK_THROWS_AS(audit_jackson(kIndicator, kUnit, p, ConstantProvider(ConstantKind::paper_c), empty), UsageError);
  const std::vector<double> negative{1.0, -1.0};
  CHECK_THROWS_AS(audit_jackson(kIndicator, kUnit, p, ConstantProvider(ConstantKind::paper_c), negative), DomainError);
}

TEST_CASE("violation threshold is min_margin < -abs_tol") {
  AuditReport r;
  r.grid = {1.0, 2.0};
  r.lhs = {1.0, 1.0};
  r.rhs = {1.0 - 1e-13, 3.0};
  finalize_report(r);
  CHECK(r.min_margin.value() == doctest::Approx(-1e-13).epsilon(1e-3));
  CHECK_FALSE(r.violated);
  r.abs_tol = 1e-14;
  finalize_report(r);
  CHECK(r.violated);
  CHECK(r.witness_t.value() == 1.0);
}

TEST_CASE("Bernstein right-hand audit") {
  const auto ind = audit_bernstein_right(kIndicator, kUnit, ApproxParams::from_s_tau(1.0, 1.0));
  REQUIRE(ind.grid.size() == 1);
  CHECK(ind.lhs[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ind.rhs[0] == 1.0);
  CHECK(ind.margin[0] == doctest::Approx(0.75).epsilon(1e-15));

  const auto zero = audit_bernstein_right(SimpleFunction({0.0}), kUnit, ApproxParams::from_s_tau(1.0, 1.0));
  CHECK(zero.margin[0] == 0.0);

  const auto r = audit_bernstein_right(reference_function(), reference_space(), ApproxParams::from_s_tau(2.0, 2.0));
  CHECK(r.lhs[0] == doctest::Approx(std::sqrt(47.890625) / 3.0).epsilon(1e-14));
  CHECK(r.rhs[0] == 61.25);
  CHECK(r.margin[0] == doctest::Approx(61.25 - std::sqrt(47.890625) / 3.0).epsilon(1e-14));
  CHECK_FALSE(r.violated);
}

TEST_CASE("weak L1 audits") {
  const std::vector<double> at08{0.8};
  const auto paper = audit_weak_l1(kIndicator, kUnit, WeakL1Variant::paper_2_over_pi, at08);
  CHECK(paper.rhs[0] == doctest::Approx(2.0 / (M_PI * 0.8)).epsilon(1e-15));
  CHECK(std::abs(paper.margin[0] - (0.7957747154594767 - 1.0)) <= 1e-6);
  CHECK(paper.violated);

  std::mt19937_64 rng(8);
  const auto grid = log_grid(1e-3, 1e3, 61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_atom_table(rng, 12);
    auto g = grid;
    const auto probes = break_probe_grid(inst.function, inst.space);
    g.insert(g.end(), probes.begin(), probes.end());
    const auto safe = audit_weak_l1(inst.function, inst.space, WeakL1Variant::safe_unit, g);
    CHECK(safe.min_margin.value() >= -1e-12);
  }
  const auto zero = audit_weak_l1(SimpleFunction({0.0}), kUnit, WeakL1Variant::paper_2_over_pi, grid);
  CHECK(zero.min_margin.value() >= 0.0);
}

TEST_CASE("q = 2 audit") {
  const auto grid = log_grid(0.01, 100.0, 41);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_atom_table(rng, 8);
    const auto a = audit_q2(inst.function, inst.space, 0.5, grid);
    const auto b = audit_weak_l1(inst.function, inst.space, WeakL1Variant::paper_2_over_pi, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(a.lhs[i] == b.lhs[i]);
      CHECK(a.rhs[i] == doctest::Approx(b.rhs[i]).epsilon(1e-14));
    }
  }
  const auto zero = audit_q2(SimpleFunction({0.0}), kUnit, 0.3, grid);
  CHECK(zero.min_margin.value() >= 0.0);

  // R at theta = 1/3: s = 2, tau = 2/3, constant (sin(pi/3)/(pi/3))^{3/2}.
  const std::vector<double> pts{0.5, 1.0, 2.0, 3.0};
  const auto r = audit_q2(reference_function(), reference_space(), 1.0 / 3.0, pts);
  const double st = 4.0 / 3.0;
  const double qtau = (std::pow(5.0, 2.0 / 3) * std::pow(0.5, st) +
                       std::pow(3.0, 2.0 / 3) * (std::pow(1.5, st) - std::pow(0.5, st)) +
                       (std::pow(3.5, st) - std::pow(1.5, st))) /
                      st;
  const double big_c = std::pow(std::sin(M_PI / 3) / (M_PI / 3), 1.5);
  const double fstar[] = {3.0, 3.0, 1.0, 1.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double rhs = big_c * std::pow(qtau, 1.5) / (pts[i] * pts[i]);
    CHECK(r.lhs[i] == fstar[i]);
    CHECK(r.rhs[i] == doctest::Approx(rhs).epsilon(1e-13));
  }
  // Pinned margins: the claim holds on R at every point, tightest at t = 3.
  const double pinned[] = {37.16086794541033, 7.040216986352583, 1.5100542465881457, 0.11557966515028695};
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(r.margin[i] == doctest::Approx(pinned[i]).epsilon(1e-12));
  CHECK_FALSE(r.violated);
}

TEST_CASE("audits are pure per grid point") {
  const auto p = ApproxParams::from_s_tau(0.7, 1.3);
  const ConstantProvider prov(ConstantKind::paper_c);
  const auto grid = log_grid(0.05, 20.0, 17);
  const auto all = audit_jackson(reference_function(), reference_space(), p, prov, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::vector<double> one{grid[i]};
    const auto single = audit_jackson(reference_function(), reference_space(), p, prov, one);
    CHECK(single.margin[0] == all.margin[i]);
  }
}

TEST_CASE("counterexample searches") {
  const auto p = ApproxParams::from_s_tau(1.0, 1.0);
  const auto sweep = counterexample_search(p, ConstantProvider(ConstantKind::paper_c_with_factor), IndicatorSweepGenerator{});
  CHECK(sweep.worst.violated);
  CHECK(sweep.worst.min_margin.value() <= -0.4);
  CHECK(sweep.instances_evaluated == 25);

  for (double s : {0.5, 2.0}) {
    for (double tau : {0.5, 4.0}) {
      const auto sharp = counterexample_search(ApproxParams::from_s_tau(s, tau), ConstantProvider(ConstantKind::sharp_oracle),
                                               RandomAtomsGenerator{12, 42, 1000});
      CHECK(sharp.instances_evaluated == 1000);
      CHECK(sharp.worst.min_margin.value() >= -1e-12);
    }
  }

  const auto a = counterexample_search(p, ConstantProvider(ConstantKind::paper_c), RandomAtomsGenerator{12, 7, 50});
  const auto b = counterexample_search(p, ConstantProvider(ConstantKind::paper_c), RandomAtomsGenerator{12, 7, 50});
  CHECK(a.worst.margin == b.worst.margin);
  CHECK(a.worst.grid == b.worst.grid);

  const auto none = counterexample_search(p, ConstantProvider(ConstantKind::paper_c), RandomAtomsGenerator{12, 7, 0});
  CHECK(none.instances_evaluated == 0);
  CHECK(none.worst.empty());
  CHECK_FALSE(none.worst.violated);
  CHECK_FALSE(none.worst.min_margin.has_value());
}

TEST_CASE("break_probe_grid straddles each break") {
  const auto g = break_probe_grid(reference_function(), reference_space());
  for (double b : {0.5, 1.5, 3.5}) {
    bool below = false;
    bool above = false;
    for (double t : g) {
      below = below || (t < b && t > b * (1 - 1e-8));
      above = above || (t > b && t < b * (1 + 1e-8));
    }
    CHECK(below);
    CHECK(above);
  }
  CHECK(break_probe_grid(SimpleFunction({0.0}), kUnit) == std::vector<double>{1.0});
}

TEST_CASE("report serialization") {
  const std::vector<double> grid{0.8, 2.0};
  const auto r = audit_weak_l1(kIndicator, kUnit, WeakL1Variant::paper_2_over_pi, grid);
  std::ostringstream csv;
  write_report_csv(csv, r);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,lhs,rhs,margin");
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("0.80000000000000004,1,", 0) == 0);

  const auto j = nlohmann::json::parse(dump_json(to_json(r)));
  CHECK(j["inequality_name"] == "weak-l1");
  CHECK(j["violated"] == true);
  CHECK(j["witness_t"].get<double>() == 0.8);
  CHECK(j["margin"].size() == 2);
  CHECK(j["params"].is_null());
}
