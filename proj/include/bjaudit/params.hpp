#pragma once

#include <limits>

namespace bjaudit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Settings for adaptive Gauss-Kronrod integration.
struct QuadratureConfig {
  double rel_tol = 1e-10;
  unsigned max_depth = 30;
};

/// Coupled parameters of an approximation scale: s + 1 = 1/theta, tau = theta * q.
/// q and tau may be infinite (together).
class ApproxParams {
 public:
  static ApproxParams from_s_tau(double s, double tau);
  static ApproxParams from_theta_q(double theta, double q);

  double theta() const noexcept { return theta_; }
  double q() const noexcept { return q_; }
  double s() const noexcept { return s_; }
  double tau() const noexcept { return tau_; }
  bool tau_infinite() const noexcept { return tau_ == kInf; }

 private:
  ApproxParams(double theta, double q, double s, double tau)
      : theta_(theta), q_(q), s_(s), tau_(tau) {}

  double theta_;
  double q_;
  double s_;
  double tau_;
};

/// c_{s,tau} = [s / (tau (s+1)^2)]^{1/tau}, and 1 when tau is infinite.
double c_exact(const ApproxParams& p);

/// N = [q theta (1 - theta)]^{1/q}. Throws UnsupportedParameter for q = inf.
double n_factor_algebraic(double theta, double q);

/// N = (int_0^inf (t^{-theta} t / sqrt(1+t^2))^q dt/t)^{-1/q}, by quadrature.
/// Throws NumericError when the requested relative tolerance is not reached.
double n_factor_integral(double theta, double q, const QuadratureConfig& quad = {});

enum class BigCVariant { table, consistency };

/// C_{theta,q}.
///
/// `table` follows the three-branch table: the q = 2 and q = inf branches are
/// closed forms; any other finite q uses 2^{1/(2 theta)} (q^2 theta)^{-1/(q theta)}
/// N^{1/theta} with the quadrature normalization factor.
/// `consistency` returns 2^{1/(2 theta)} c_{s,tau}, the value implied by
/// reading c_{s,tau} as the normalized form of C_{theta,q}.
double c_big(double theta, double q, BigCVariant variant, const QuadratureConfig& quad = {});

/// Side-by-side comparison of the mutually inconsistent constant definitions.
struct ConstantConsistencyReport {
  double theta = 0;
  double q = 0;
  double table_value = 0;        // c_big(table)
  double consistency_value = 0;  // c_big(consistency)
  double abs_diff = 0;
  double c_exact = 0;
  double n_algebraic = 0;
  double n_integral = 0;
  // N_alg^{1/q} (theta q^2)^{-1/(q theta)}, exponent as literally written.
  double c_from_n_literal = 0;
  // N_alg^{1/theta} (theta q^2)^{-1/(q theta)}; equals c_exact.
  double c_from_n_corrected = 0;
};

/// Requires q < inf. Never throws on disagreement; propagates quadrature errors.
ConstantConsistencyReport constant_consistency_report(double theta, double q,
                                                      const QuadratureConfig& quad = {});

}  // namespace bjaudit
