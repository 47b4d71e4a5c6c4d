#include "bjaudit/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bjaudit/errors.hpp"

namespace bjaudit {

namespace {

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw DomainError("theta must lie in (0,1), got " + std::to_string(theta));
  }
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0)) throw DomainError(std::string(name) + " must be positive, got " + std::to_string(x));
}

// int_0^1 x^{a-1} (1+x^2)^{-q/2} dx. With x = e^{-y} this is
// int_0^inf e^{-a y} (1+e^{-2y})^{-q/2} dy: smooth, with no endpoint singularity.
double unit_interval_piece(double a, double q, const QuadratureConfig& quad) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [a, q](double y) { return std::exp(-a * y) * std::pow(1.0 + std::exp(-2.0 * y), -0.5 * q); };
  double err = 0.0;
  const double value = gauss_kronrod<double, 15>::integrate(integrand, 0.0, std::numeric_limits<double>::infinity(),
                                                            quad.max_depth, quad.rel_tol, &err);
  if (!std::isfinite(value) || err > quad.rel_tol * std::abs(value)) {
    throw NumericError("normalization integral did not converge", value != 0.0 ? err / std::abs(value) : err);
  }
  return value;
}

}  // namespace

ApproxParams ApproxParams::from_s_tau(double s, double tau) {
  require_positive(s, "s");
  require_positive(tau, "tau");
  const double theta = 1.0 / (s + 1.0);
  const double q = tau == kInf ? kInf : tau * (s + 1.0);
  return {theta, q, s, tau};
}

ApproxParams ApproxParams::from_theta_q(double theta, double q) {
  require_theta(theta);
  require_positive(q, "q");
  const double tau = q == kInf ? kInf : theta * q;
  return {theta, q, 1.0 / theta - 1.0, tau};
}

double c_exact(const ApproxParams& p) {
  if (p.tau_infinite()) return 1.0;
  const double s = p.s();
  const double tau = p.tau();
  return std::pow(s / (tau * (s + 1.0) * (s + 1.0)), 1.0 / tau);
}

double n_factor_algebraic(double theta, double q) {
  require_theta(theta);
  require_positive(q, "q");
  if (q == kInf) throw UnsupportedParameter("algebraic normalization factor is undefined for q = inf");
  return std::pow(q * theta * (1.0 - theta), 1.0 / q);
}

double n_factor_integral(double theta, double q, const QuadratureConfig& quad) {
  require_theta(theta);
  require_positive(q, "q");
  if (q == kInf) throw UnsupportedParameter("integral normalization factor is undefined for q = inf");
  // Split at t = 1; on (1,inf) put u = 1/t so both halves live on (0,1):
  //   (0,1):  t^{(1-theta)q - 1} (1+t^2)^{-q/2}
  //   (1,inf): u^{theta q - 1} (1+u^2)^{-q/2}
  const double integral =
      unit_interval_piece((1.0 - theta) * q, q, quad) + unit_interval_piece(theta * q, q, quad);
  return std::pow(integral, -1.0 / q);
}

double c_big(double theta, double q, BigCVariant variant, const QuadratureConfig& quad) {
  require_theta(theta);
  require_positive(q, "q");
  const double scale = std::pow(2.0, 0.5 / theta);
  if (variant == BigCVariant::consistency) {
    return scale * c_exact(ApproxParams::from_theta_q(theta, q));
  }
  if (q == kInf) return scale;
  if (q == 2.0) {
    const double pt = std::numbers::pi * theta;
    return std::pow(std::sin(pt) / pt, 0.5 / theta);
  }
  const double n = n_factor_integral(theta, q, quad);
  return scale * std::pow(q * q * theta, -1.0 / (q * theta)) * std::pow(n, 1.0 / theta);
}

ConstantConsistencyReport constant_consistency_report(double theta, double q, const QuadratureConfig& quad) {
  require_theta(theta);
  require_positive(q, "q");
  if (q == kInf) throw UnsupportedParameter("consistency report requires finite q");

  ConstantConsistencyReport r;
  r.theta = theta;
  r.q = q;
  r.table_value = c_big(theta, q, BigCVariant::table, quad);
  r.consistency_value = c_big(theta, q, BigCVariant::consistency, quad);
  r.abs_diff = std::abs(r.table_value - r.consistency_value);
  r.c_exact = c_exact(ApproxParams::from_theta_q(theta, q));
  r.n_algebraic = n_factor_algebraic(theta, q);
  r.n_integral = n_factor_integral(theta, q, quad);
  const double prefactor = std::pow(theta * q * q, -1.0 / (q * theta));
  r.c_from_n_literal = std::pow(r.n_algebraic, 1.0 / q) * prefactor;
  r.c_from_n_corrected = std::pow(r.n_algebraic, 1.0 / theta) * prefactor;
  return r;
}

}  // namespace bjaudit
