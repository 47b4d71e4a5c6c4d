#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "bjaudit/errors.hpp"
#include "bjaudit/spectral.hpp"

using namespace bjaudit;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

MatrixXcd diag12() {
  MatrixXcd h = MatrixXcd::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 2.0;
  return h;
}

MatrixXcd swap2() {
  MatrixXcd h = MatrixXcd::Zero(2, 2);
  h(0, 1) = 1.0;
  h(1, 0) = 1.0;
  return h;
}

VectorXcd vec2(double a, double b) {
  VectorXcd v(2);
  v << a, b;
  return v;
}

std::pair<MatrixXcd, VectorXcd> random_model(std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(uniform01(rng) * 8);
  MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = {2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1};
  }
  MatrixXcd h = (a + a.adjoint()) / 2.0;
  VectorXcd psi(n);
  for (int i = 0; i < n; ++i) psi(i) = {2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1};
  psi.normalize();
  return {h, psi};
}

}  // namespace

TEST_CASE("spectral measure examples") {
  const auto aligned = spectral_measure(diag12(), vec2(1.0, 0.0));
  CHECK(aligned.eigenvalues == std::vector<double>{1.0});
  CHECK(aligned.weights == std::vector<double>{1.0});

  const double r = 1.0 / std::sqrt(2.0);
  const auto even = spectral_measure(diag12(), vec2(r, r));
  REQUIRE(even.weights.size() == 2);
  CHECK(even.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(even.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(even.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(even.weights[1] == doctest::Approx(0.5).epsilon(1e-14));

  const auto sw = spectral_measure(swap2(), vec2(1.0, 0.0));
  REQUIRE(sw.weights.size() == 2);
  CHECK(sw.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sw.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sw.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sw.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("degenerate eigenvalues are merged") {
  MatrixXcd h = MatrixXcd::Identity(3, 3);
  h(2, 2) = 4.0;
  VectorXcd psi(3);
  psi << 0.6, 0.0, 0.8;
  const auto m = spectral_measure(h, psi);
  REQUIRE(m.eigenvalues.size() == 2);
  CHECK(m.weights[0] == doctest::Approx(0.36).epsilon(1e-13));
  CHECK(m.weights[1] == doctest::Approx(0.64).epsilon(1e-13));

  VectorXcd psi2(3);
  psi2 << 0.6, 0.8, 0.0;
  const auto m2 = spectral_measure(h, psi2);
  REQUIRE(m2.eigenvalues.size() == 1);
  CHECK(m2.weights[0] == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("spectral rearrangement examples") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto even = spectral_measure(diag12(), vec2(r, r));
  const auto sf = spectral_rearrangement(even, [](double x) { return x; });
  REQUIRE(sf.segments() == 2);
  CHECK(sf.values()[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sf.values()[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sf.breaks()[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(sf.support_end() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(spectral_rearrangement(even, [](double) { return 0.0; }).empty());

  const auto sw = spectral_measure(swap2(), vec2(1.0, 0.0));
  const auto sq = spectral_rearrangement(sw, [](double x) { return x * x; });
  REQUIRE(sq.segments() == 1);
  CHECK(sq.values()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sq.support_end() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(spectral_rearrangement(sw, [](double x) { return x > 0 ? std::nan("") : 1.0; }), DomainError);
  CHECK_THROWS_AS(spectral_rearrangement(sw, [](double) { return kInf; }), DomainError);
}

TEST_CASE("spectral bound audits") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto even = spectral_measure(diag12(), vec2(r, r));
  const auto id = [](double x) { return x; };
  const std::vector<double> near_mass{0.99};
  const auto paper = audit_spectral_bound(even, id, WeakL1Variant::paper_2_over_pi, near_mass);
  CHECK(paper.inequality_name == "spectral");
  CHECK(paper.margin[0] == doctest::Approx(3.0 / (M_PI * 0.99) - 1.0).epsilon(1e-12));
  CHECK(paper.violated);

  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(std::pow(10.0, -2.0 + 0.05 * i));
  const auto zero = audit_spectral_bound(even, [](double) { return 0.0; }, WeakL1Variant::paper_2_over_pi, grid);
  CHECK(zero.min_margin.value() >= 0.0);
}

TEST_CASE("random Hermitian models") {
  std::mt19937_64 rng(17);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(std::pow(10.0, -2.0 + 0.05 * i));
  for (int trial = 0; trial < 100; ++trial) {
    const auto [h, psi] = random_model(rng);
    const auto m = spectral_measure(h, psi);
    double wsum = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      wsum += m.weights[i];
      mean += m.weights[i] * m.eigenvalues[i];
      if (i > 0) CHECK(m.eigenvalues[i] > m.eigenvalues[i - 1]);
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-10);
    const double expect = psi.dot(h * psi).real();
    CHECK(std::abs(expect - mean) <= 1e-8);
    for (auto g : {+[](double x) { return x; }, +[](double x) { return std::exp(x); }, +[](double x) { return x * x * x; }}) {
      const auto safe = audit_spectral_bound(m, g, WeakL1Variant::safe_unit, grid);
      CHECK(safe.min_margin.value() >= -1e-12);
    }
  }
}

TEST_CASE("spectral input validation") {
  CHECK_THROWS_AS(spectral_measure(MatrixXcd::Zero(2, 3), vec2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(spectral_measure(MatrixXcd(0, 0), VectorXcd(0)), DomainError);
  MatrixXcd nonherm = diag12();
  nonherm(0, 1) = 1.0;
  CHECK_THROWS_AS(spectral_measure(nonherm, vec2(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(spectral_measure(diag12(), vec2(1.0, 1.0)), DomainError);
  VectorXcd wrong(3);
  wrong << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(spectral_measure(diag12(), wrong), DomainError);
  CHECK_THROWS_AS(spectral_measure(MatrixXcd::Identity(65, 65), VectorXcd::Unit(65, 0)), DomainError);
}

TEST_CASE("matrix and vector CSV") {
  std::istringstream m("row,col,re,im\n0,0,1,0\n0,1,0,1\n1,0,0,-1\n1,1,2,0\n");
  const auto h = read_matrix_csv(m);
  REQUIRE(h.rows() == 2);
  CHECK(h(0, 1) == std::complex<double>(0.0, 1.0));
  CHECK(h(1, 0) == std::complex<double>(0.0, -1.0));

  std::istringstream v("index,re,im\n1,0,0.6\n0,0.8,0\n");
  const auto psi = read_vector_csv(v);
  REQUIRE(psi.size() == 2);
  CHECK(psi(1) == std::complex<double>(0.0, 0.6));

  const auto model = spectral_measure(h, psi);
  double wsum = 0.0;
  for (double w : model.weights) wsum += w;
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));

  std::istringstream missing("row,col,re,im\n0,0,1,0\n0,1,0,1\n1,1,2,0\n");
  CHECK_THROWS_AS(read_matrix_csv(missing), UsageError);
  std::istringstream dup("row,col,re,im\n0,0,1,0\n0,0,1,0\n1,0,0,0\n1,1,2,0\n");
  CHECK_THROWS_AS(read_matrix_csv(dup), UsageError);
  std::istringstream range("row,col,re,im\n0,0,1,0\n0,1,0,1\n1,0,0,-1\n2,1,2,0\n");
  CHECK_THROWS_AS(read_matrix_csv(range), UsageError);
  std::istringstream gap("index,re,im\n0,1,0\n2,0,0\n");
  CHECK_THROWS_AS(read_vector_csv(gap), UsageError);
}
