#include "qkramers/rate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qkramers/numerics/quadrature.hpp"
#include "qkramers/numerics/special.hpp"

namespace qkr {

namespace {
constexpr double kPi = std::numbers::pi;

void check_resonances(const MatsubaraTable& t) {
  for (long n = 1; n <= t.n_max; ++n) {
    if (std::abs(t.nu[n] * t.nu[n] - 1.0) < 1e-9)
      throw PoleError("Matsubara resonance nu_n = 1 at n=" + std::to_string(n) +
                      " (theta = 2 pi n)");
  }
}

double psi_tail(const double coeff[], const double pole[], int k, double kappa, long n) {
  // sum_{m > n} sum_i coeff_i/(kappa m - pole_i) with vanishing coefficient
  // sum; exact via digamma.
  double acc = 0.0;
  for (int i = 0; i < k; ++i)
    acc -= coeff[i] / kappa * numerics::digamma(static_cast<double>(n + 1) - pole[i] / kappa);
  return acc;
}

double psi1_tail(double coeff, double pole, double kappa, long n) {
  // sum_{m > n} coeff/(kappa m - pole)^2, exact via trigamma.
  return coeff / (kappa * kappa) *
         numerics::trigamma(static_cast<double>(n + 1) - pole / kappa);
}

}  // namespace

double partition_well(const MatsubaraTable& t, const SystemParams& p) {
  p.validate();
  const ProductResult wp = well_product(t, p.omega_w);
  return std::exp(p.theta * p.v_b) / (p.theta * p.omega_w) * wp.value;
}

RateReport decay_rate(const MatsubaraTable& t, const SystemParams& p,
                      const RateOptions& opt) {
  p.validate();
  if (std::abs(p.theta - t.theta) > 1e-12 * p.theta)
    throw DomainError("decay_rate: params.theta does not match the table");

  RateReport rep;
  rep.theta = p.theta;
  rep.n_max = t.n_max;
  rep.theta_c = theta_critical(t.model, 1e-6, t.n_max);
  rep.theta_ok = p.theta <= (1.0 - opt.theta_guard) * rep.theta_c;
  if (!rep.theta_ok)
    throw RegimeError("decay_rate: theta = " + std::to_string(p.theta) +
                      " above the guard (1 - " + std::to_string(opt.theta_guard) +
                      ") * theta_c, theta_c = " + std::to_string(rep.theta_c));

  rep.omega_r = grote_hynes(t.model);
  const ProductResult rp = ratio_product(t, p.omega_w);
  rep.quantum_factor = rp.value;
  rep.tail_error = rp.tail_error;
  rep.prefactor_classical = p.omega_w * rep.omega_r / (2.0 * kPi);
  rep.arrhenius = std::exp(-p.theta * p.v_b);
  rep.gamma_rate = rep.arrhenius * rep.prefactor_classical * rep.quantum_factor;

  const double lambda = lambda_cap(t).value;
  std::optional<double> omega;
  if (t.model.has_smooth_kernel()) omega = omega_cap(t).value;
  rep.matching = matching_condition(lambda, omega, rep.omega_r, p, opt.matching_threshold);
  rep.plateau = plateau_window(lambda, rep.omega_r, p, opt.plateau_c);
  return rep;
}

double flux_at_top(const FluxState& st, const MatsubaraTable& t, const SystemParams& p) {
  p.validate();
  if (std::abs(st.theta - p.theta) > 1e-12 * p.theta ||
      std::abs(st.theta - t.theta) > 1e-12 * t.theta)
    throw DomainError("flux_at_top: state, table, and params disagree on theta");
  const double al = -st.lambda;
  // d/dx_f of the flux solution at the barrier top: the equilibrium phase is
  // even in x_f, so only the complex upper limit of the form factor
  // contributes: dg/dx(0,0) = i omega_r sqrt(|Lambda| / 4 pi).
  const double j_flux =
      2.0 * st.prefactor * st.omega_r * std::sqrt(al / (4.0 * kPi));

  double z_well;
  if (st.mode == NormMode::drude_absolute) {
    z_well = partition_well(t, p);
  } else {
    // Relative normalization: the same fluctuation determinant divides the
    // state and the well partition function, leaving the convergent
    // barrier/well ratio product.
    const ProductResult rp = ratio_product(t, p.omega_w);
    z_well = std::sqrt(4.0 * kPi * al) * std::exp(p.theta * p.v_b) /
             (p.omega_w * rp.value);
  }
  const double gamma_flux = j_flux / z_well;

  const double gamma_product = decay_rate(t, p).gamma_rate;
  if (std::abs(gamma_flux - gamma_product) > 1e-6 * std::abs(gamma_product))
    throw NumericalError("flux_at_top: flux-route rate disagrees with the product form");
  return gamma_flux;
}

double kappa_sum(const DampingModel& drude, double theta, long n_max) {
  if (!drude.is_drude()) throw UnsupportedError("kappa_sum requires a Drude model");
  if (std::abs(drude.omega_d - 1.0) < 1e-8)
    throw PoleError("kappa_sum: omega_d = 1 degenerates with the resonance poles");
  const double wd = drude.omega_d;
  const double kappa = 2.0 * kPi / theta;

  MatsubaraTable t = build_table(drude, theta, n_max);
  check_resonances(t);

  numerics::Kahan acc;
  for (long n = 1; n <= n_max; ++n) {
    const double nu = t.nu[n];
    acc.add(nu * wd / ((nu * nu - 1.0) * (wd + nu)));
  }

  // Partial fractions of nu wd / ((nu^2 - 1)(nu + wd)).
  const double coeff[3] = {wd / (2.0 * (wd + 1.0)), wd / (2.0 * (wd - 1.0)),
                           -wd * wd / (wd * wd - 1.0)};
  const double pole[3] = {1.0, -1.0, -wd};
  const double tail = psi_tail(coeff, pole, 3, kappa, n_max);
  return (2.0 / theta) * (acc.get() + tail);
}

FirstOrderResponse lambda_omega_prime(const DampingModel& drude, double theta,
                                      long n_max) {
  if (!drude.is_drude())
    throw UnsupportedError("lambda_omega_prime requires a Drude model");
  if (std::abs(drude.omega_d - 1.0) < 1e-8)
    throw PoleError("lambda_omega_prime: omega_d = 1 degenerates with the resonance poles");
  const double wd = drude.omega_d;
  const double kappa = 2.0 * kPi / theta;

  MatsubaraTable t = build_table(drude, theta, n_max);
  check_resonances(t);

  numerics::Kahan lam, om;
  for (long n = 1; n <= n_max; ++n) {
    const double nu = t.nu[n];
    const double d2 = (nu * nu - 1.0) * (nu * nu - 1.0);
    lam.add(-nu * wd / (d2 * (wd + nu)));
    om.add(nu * nu * nu * wd / (d2 * (wd + nu)));
  }

  // nu wd / ((nu-1)^2 (nu+1)^2 (nu+wd)): second-order poles at +-1 plus the
  // Drude pole.
  const double wp1 = wd + 1.0, wm1 = wd - 1.0;
  {
    const double a_p = wd / (4.0 * wp1);
    const double b_p = -wd / (4.0 * wp1 * wp1);
    const double a_m = -wd / (4.0 * wm1);
    const double b_m = wd / (4.0 * wm1 * wm1);
    const double c_d = -wd * wd / ((wd * wd - 1.0) * (wd * wd - 1.0));
    const double coeff[3] = {b_p, b_m, c_d};
    const double pole[3] = {1.0, -1.0, -wd};
    double tail = psi_tail(coeff, pole, 3, kappa, n_max);
    tail += psi1_tail(a_p, 1.0, kappa, n_max);
    tail += psi1_tail(a_m, -1.0, kappa, n_max);
    // The Lambda' summand carries an overall minus sign.
    lam.add(-tail);
  }
  {
    // nu^3 wd / ((nu-1)^2 (nu+1)^2 (nu+wd)).
    const double a_p = wd / (4.0 * wp1);
    const double b_p = a_p * (2.0 - 1.0 / wp1);
    const double a_m = -wd / (4.0 * wm1);
    const double b_m = a_m * (-2.0 - 1.0 / wm1);
    const double c_d = -wd * wd * wd * wd / ((wd * wd - 1.0) * (wd * wd - 1.0));
    const double coeff[3] = {b_p, b_m, c_d};
    const double pole[3] = {1.0, -1.0, -wd};
    double tail = psi_tail(coeff, pole, 3, kappa, n_max);
    tail += psi1_tail(a_p, 1.0, kappa, n_max);
    tail += psi1_tail(a_m, -1.0, kappa, n_max);
    om.add(tail);
  }

  return {(2.0 / theta) * lam.get(), (2.0 / theta) * om.get()};
}

MatchingReport matching_condition(double lambda, std::optional<double> omega,
                                  double omega_r, const SystemParams& p,
                                  double threshold) {
  p.validate();
  MatchingReport rep;
  rep.threshold = threshold;
  if (!(lambda < 0.0)) throw RegimeError("matching_condition requires Lambda < 0");
  if (!omega) {
    rep.status = MatchingStatus::unavailable;
    return rep;
  }
  const double al = -lambda;
  const double denom = 1.0 - omega_r * omega_r * al / *omega;
  if (denom <= 1e-12) {
    rep.status = MatchingStatus::impossible;
    rep.ratio = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.ratio = al * p.epsilon * p.epsilon / denom;
  rep.ok = rep.ratio < threshold;
  rep.status = rep.ok ? MatchingStatus::ok : MatchingStatus::exceeded;
  return rep;
}

double drude_min_gamma(const DampingModel& drude, double theta, const SystemParams& p,
                       long n_max) {
  p.validate();
  if (!drude.is_drude()) throw UnsupportedError("drude_min_gamma requires a Drude model");
  if (!(theta < kPi))
    throw UnsupportedError("drude_min_gamma: theta >= pi outside the branch of validity");
  const double wd = drude.omega_d;
  const double tan_half = std::tan(0.5 * theta);
  const double kap = kappa_sum(drude, theta, n_max);
  const double cutoff_ratio = (wd + 1.0) / wd;
  return cutoff_ratio / (2.0 * p.v_b * tan_half) /
         (1.0 + 2.0 * kap * tan_half * cutoff_ratio);
}

PlateauWindow plateau_window(double lambda, double omega_r, const SystemParams& p,
                             double plateau_c) {
  p.validate();
  if (!(lambda < 0.0)) throw RegimeError("plateau_window requires Lambda < 0");
  PlateauWindow w;
  w.t_min = plateau_c / omega_r;
  w.t_max = std::log(1.0 / (p.epsilon * std::sqrt(-lambda))) / omega_r;
  w.ok = w.t_max > w.t_min;
  return w;
}

}  // namespace qkr
