#include "qkramers/fluxstate.hpp"

#include <cmath>
#include <numbers>

namespace qkr {

namespace {
constexpr double kPi = std::numbers::pi;

double abs_lambda(const FluxState& st) { return -st.lambda; }

// Standardized complex argument of the form factor integral:
// v = (r_f - i |Lambda| omega_r x_f) / (2 sqrt(|Lambda|)).
cdouble form_arg(const FluxState& st, double x_f, double r_f) {
  const double al = abs_lambda(st);
  return cdouble(r_f, -al * st.omega_r * x_f) / (2.0 * std::sqrt(al));
}
}  // namespace

FluxState make_flux_state(const DampingModel& m, double theta, NormMode mode,
                          long n_max, double theta_guard) {
  FluxState st;
  st.model = m;
  st.theta = theta;
  st.mode = mode;
  st.n_max = n_max;

  st.theta_c = theta_critical(m, 1e-6, n_max);
  if (theta > (1.0 - theta_guard) * st.theta_c)
    throw RegimeError("flux state requires theta <= " + std::to_string(1.0 - theta_guard) +
                      " * theta_c (theta_c = " + std::to_string(st.theta_c) + ")");

  const MatsubaraTable table = build_table(m, theta, n_max);
  st.lambda = lambda_cap(table).value;
  if (!(st.lambda < 0.0)) throw RegimeError("flux state requires Lambda < 0");

  const PoleDecomposition dec = decompose_gplus(m);
  st.omega_r = dec.omega_r();
  st.residue_gh = dec.residue_gh();
  if (!(st.omega_r * theta < kPi))
    throw RegimeError("flux state branch requires omega_r * theta < pi");

  if (m.has_smooth_kernel()) st.omega = omega_cap(table).value;

  if (mode == NormMode::drude_absolute) {
    const ProductResult fp = fluct_product(table);  // rejects strict Ohmic
    st.prefactor = fp.value / (std::sqrt(-st.lambda) * 2.0 * theta * std::sqrt(kPi));
  }
  return st;
}

cdouble rho_theta(const FluxState& st, double x_f, double r_f) {
  // exp((i/2) Sigma_theta) with Sigma_theta = i r^2/(2 Lambda) + i Omega x^2/2
  // is real: exp(-r^2/(4 Lambda) - Omega x^2 / 4).
  double omega = 0.0;
  if (x_f != 0.0) {
    if (!st.omega)
      throw UnsupportedError(
          "rho_theta off the diagonal requires Omega; use a Drude cutoff");
    omega = *st.omega;
  }
  const double expo = -r_f * r_f / (4.0 * st.lambda) - 0.25 * omega * x_f * x_f;
  return {st.prefactor * std::exp(expo), 0.0};
}

cdouble form_factor_stationary(const FluxState& st, double x_f, double r_f) {
  return 0.5 * numerics::erfc_complex(form_arg(st, x_f, r_f));
}

cdouble form_factor_t(const FluxState& st, double x_f, double r_f, double t) {
  // Finite-time coefficients from the single-pole growth of S(t): the ratio
  // S^2/(S^2 - Lambda^2) approaches one exponentially.
  const double arg = 0.5 * st.omega_r * st.theta;
  const double s_as = -0.5 / std::tan(arg) * st.residue_gh * std::exp(st.omega_r * t);
  const double s2 = s_as * s_as;
  const double l2 = st.lambda * st.lambda;
  if (s2 <= l2)
    throw RegimeError("form_factor_t: S(t)^2 <= Lambda^2; time too small for the "
                      "stationary branch");
  const double beta = std::sqrt(s2 / (s2 - l2));
  return 0.5 * numerics::erfc_complex(beta * form_arg(st, x_f, r_f));
}

cdouble rho_flux(const FluxState& st, double x_f, double r_f) {
  double omega = 0.0;
  if (x_f != 0.0) {
    if (!st.omega)
      throw UnsupportedError(
          "rho_flux off the diagonal requires Omega; use a Drude cutoff");
    omega = *st.omega;
  }
  const double al = abs_lambda(st);
  const cdouble v = form_arg(st, x_f, r_f);
  // rho_theta * g written through erfcx so the equilibrium growth on the well
  // side cancels the Gaussian decay analytically.
  const double gauss = std::exp(0.25 * x_f * x_f * (al * st.omega_r * st.omega_r - omega));
  const cdouble phase = std::exp(cdouble(0.0, 0.5 * st.omega_r * x_f * r_f));
  return 0.5 * st.prefactor * gauss * phase * numerics::erfcx_complex(v);
}

std::vector<FluxProfileRow> flux_profile(const FluxState& st, std::span<const double> q) {
  std::vector<FluxProfileRow> rows;
  rows.reserve(q.size());
  const double scale = 2.0 * std::sqrt(abs_lambda(st));
  for (const double qi : q)
    rows.push_back({qi, 0.5 * std::erfc(qi / scale)});
  return rows;
}

}  // namespace qkr
