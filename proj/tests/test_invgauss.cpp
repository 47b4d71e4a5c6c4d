#include <cmath>

#include "doctest.h"

#include "bjaudit/invgauss.hpp"
#include "bjaudit/params.hpp"
#include "bjaudit/rearrange.hpp"

using namespace bjaudit;

namespace {

std::vector<double> default_u_grid() {
  std::vector<double> u;
  for (int i = 0; i < 1100; ++i) u.push_back(0.01 + (11.0 - 0.01) * i / 1099.0);
  return u;
}

}  // namespace

TEST_CASE("inverse Gaussian density") {
  const InvGaussParams p;
  CHECK(invgauss_density(2.0, p) == doctest::Approx(5.0 / std::sqrt(M_PI)).epsilon(1e-15));
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const double plotted = 10.0 * std::sqrt(2.0 / (M_PI * t * t * t)) * std::exp(-(t - 2.0) * (t - 2.0) / (2.0 * t));
    CHECK(invgauss_density(t, p) == doctest::Approx(plotted).epsilon(1e-14));
  }
  CHECK(invgauss_density(1e-3, p) < 1e-200);
  CHECK(invgauss_density(1e-6, p) == 0.0);
  CHECK(invgauss_density(0.0, p) == 0.0);
  CHECK(invgauss_density(-1.0, p) == 0.0);
}

TEST_CASE("demo pipeline with default parameters") {
  DemoConfig cfg;
  cfg.u_grid = default_u_grid();
  const auto res = demo_pipeline(cfg);

  CHECK(res.warnings.empty());
  CHECK(res.refinement_rel_change <= 1e-3);
  CHECK(res.tail_rel_mass <= 1e-10);
  CHECK(res.c_st == doctest::Approx(c_exact(ApproxParams::from_s_tau(2.0, 2.0))).epsilon(1e-15));
  REQUIRE(res.rows.size() == cfg.u_grid.size());

  double prev = kInf;
  for (const auto& row : res.rows) {
    CHECK(row.f_star <= prev);
    prev = row.f_star;
    CHECK(row.e_value == row.f_star);
    CHECK(row.jackson_bound ==
          doctest::Approx(std::pow(row.u, -2.0) * res.c_st * res.quasinorm).epsilon(1e-14));
    if (row.u > 0.5) CHECK(row.jackson_bound >= row.e_value);
  }

  // Regression pins from the reference run.
  CHECK(res.quasinorm == doctest::Approx(0.16583870074338553).epsilon(1e-9));
  CHECK(res.support_mass == doctest::Approx(0.4990026450783096).epsilon(1e-12));
  CHECK(res.rows.front().f_star == doctest::Approx(4.8368143392527596).epsilon(1e-12));
  CHECK(res.rows.front().jackson_bound == doctest::Approx(552.79566914461839).epsilon(1e-9));
  CHECK(res.sample_t.size() == res.sample_f.size());
  CHECK(res.rearrangement.support_end() == doctest::Approx(res.support_mass).epsilon(1e-12));
}

TEST_CASE("demo reports refinement trouble as a warning") {
  DemoConfig cfg;
  cfg.n_cells = 3;
  cfg.u_grid = {1.0};
  const auto res = demo_pipeline(cfg);
  CHECK_FALSE(res.warnings.empty());
}
