#include "qkramers/action.hpp"

#include <cmath>

namespace qkr {

namespace {
constexpr cdouble kI{0.0, 1.0};

void check_context(const ActionContext& c) {
  if (!(c.lambda < 0.0)) throw RegimeError("action context requires Lambda < 0");
  if (c.a == 0.0) throw PoleError("action context requires A(t) != 0");
}
}  // namespace

ActionContext exact_action_context(const BarrierDynamics& dyn, double omega, double t) {
  if (!(t > 0.0)) throw DomainError("exact_action_context: t must be > 0");
  ActionContext c;
  c.lambda = dyn.lambda;
  c.omega = omega;
  c.omega_r = dyn.decomposition.omega_r();
  c.t = t;
  c.a = a_of_t(dyn.decomposition, t);
  c.a_dot = -0.5 * gplus(dyn.decomposition, t, 1);
  c.a_ddot = -0.5 * gplus(dyn.decomposition, t, 2);
  c.s = s_of_t(dyn, t);
  c.s_dot = s_dot(dyn, t);
  c.s_ddot = s_ddot(dyn, t);
  check_context(c);
  return c;
}

ActionContext asymptotic_action_context(const BarrierDynamics& dyn, double omega,
                                        double t) {
  if (!(t > 0.0)) throw DomainError("asymptotic_action_context: t must be > 0");
  ActionContext c;
  c.lambda = dyn.lambda;
  c.omega = omega;
  c.omega_r = dyn.decomposition.omega_r();
  c.t = t;
  c.a = a_asymptotic(dyn.decomposition, t);
  c.a_dot = c.omega_r * c.a;
  c.a_ddot = c.omega_r * c.omega_r * c.a;
  c.s = s_asymptotic(dyn, t);
  c.s_dot = c.omega_r * c.s;
  c.s_ddot = c.omega_r * c.omega_r * c.s;
  check_context(c);
  return c;
}

cdouble sigma_theta(double lambda, double omega, cdouble xbar, cdouble rbar) {
  if (lambda == 0.0) throw PoleError("sigma_theta: caustic at Lambda = 0");
  return kI * rbar * rbar / (2.0 * lambda) + kI * 0.5 * omega * xbar * xbar;
}

cdouble sigma_t_full(const ActionContext& c, cdouble x_f, cdouble r_f, cdouble x_i,
                     cdouble r_i, cdouble xbar, cdouble rbar) {
  check_context(c);
  const double A = c.a, Ad = c.a_dot, Add = c.a_ddot;
  const double S = c.s, Sd = c.s_dot, Sdd = c.s_ddot;
  const double L = c.lambda, W = c.omega;
  const double curv = Add - Ad * Ad / A;  // exponentially small at large t

  cdouble sum = (x_f * r_f + x_i * r_i) * (Ad / A);
  sum += x_i * r_f / (2.0 * A);
  sum -= 2.0 * x_f * r_i * curv;
  sum += rbar * x_i * (-Ad / A - S / (2.0 * L * A));
  sum += rbar * x_f * (2.0 * curv + Sd / L - S * Ad / (L * A));
  sum += kI * xbar * x_i * (-W + Sd / (2.0 * A));
  sum -= kI * xbar * x_f * (Sdd - (Ad / A) * Sd);
  sum += kI * 0.5 * x_i * x_i *
         (W - Sd / A + (L / (4.0 * A * A)) * (1.0 - S * S / (L * L)));
  sum += kI * x_i * x_f *
         (Sdd - (Ad / A) * Sd -
          (L / (2.0 * A * A)) * (Ad * (S * S / (L * L) - 1.0) - A * S * Sd / (L * L)));
  const double mom = Sd - (Ad / A) * S;
  sum += kI * 0.5 * x_f * x_f * (W + L * Ad * Ad / (A * A) - mom * mom / L);
  return sum;
}

cdouble sigma_t_tilde(const ActionContext& c, cdouble x_f, cdouble r_f, cdouble x_i,
                      cdouble r_i) {
  check_context(c);
  const double A = c.a, Ad = c.a_dot;
  const double S = c.s;
  const double L = c.lambda, W = c.omega;

  cdouble sum = (x_f * r_f + x_i * r_i) * (Ad / A);
  sum += x_i * r_f / (2.0 * A);
  sum -= r_i * x_i * (Ad / A + S / (2.0 * L * A));
  sum += kI * 0.5 * x_i * x_i * (-W + (L / (4.0 * A * A)) * (1.0 - S * S / (L * L)));
  sum += kI * x_i * x_f * (L * Ad / (2.0 * A * A));
  sum += kI * 0.5 * x_f * x_f * (W + L * Ad * Ad / (A * A));
  return sum;
}

ExtremalPoint extremal_point(const ActionContext& c, cdouble x_f, cdouble r_f) {
  check_context(c);
  ExtremalPoint p;
  p.x_i0 = -2.0 * c.a_dot * x_f + 2.0 * kI * c.a * r_f / c.lambda;
  p.r_i0 = kI * c.s_dot * x_f + c.s * r_f / c.lambda;
  return p;
}

cdouble sigma_hat(const ActionContext& c, cdouble x_hat, cdouble r_hat) {
  check_context(c);
  const double A = c.a, S = c.s, L = c.lambda;
  return kI / (2.0 * L) *
         (r_hat * r_hat + kI * (S / A) * r_hat * x_hat -
          ((S * S - L * L) / (4.0 * A * A)) * x_hat * x_hat);
}

}  // namespace qkr
