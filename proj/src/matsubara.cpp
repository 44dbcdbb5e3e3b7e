#include "qkramers/matsubara.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qkramers/detail/charpoly.hpp"
#include "qkramers/numerics/quadrature.hpp"

namespace qkr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGuard = 1e-9;

using detail::cdouble;

// Partial fractions of u(nu) = 1/(nu^2 + nu gamma_hat(nu) - 1) over the
// cleared characteristic roots.
detail::RationalPF u_fraction(const DampingModel& m) {
  const auto roots = detail::shifted_char_roots(m, -1.0);
  if (m.is_drude()) return detail::make_pf({m.omega_d, 1.0}, roots);
  return detail::make_pf({1.0}, roots);
}

// Partial fractions of w(nu) = (nu gamma_hat - 1) u(nu). The residues sum to
// gamma for strict Ohmic damping, signalling the logarithmic divergence.
detail::RationalPF w_fraction(const DampingModel& m) {
  const auto roots = detail::shifted_char_roots(m, -1.0);
  if (m.is_drude())
    return detail::make_pf({-m.omega_d, m.gamma * m.omega_d - 1.0}, roots);
  return detail::make_pf({-1.0, m.gamma}, roots);
}

double residue_sum(const detail::RationalPF& pf) {
  cdouble s = 0.0;
  for (const auto& r : pf.residues) s += r;
  return std::abs(s);
}

std::vector<cdouble> numerator_roots_nu2(const DampingModel& m) {
  // Roots of the cleared numerator of nu^2 (times the Drude denominator).
  if (m.is_drude()) return {0.0, 0.0, cdouble(-m.omega_d, 0.0)};
  return {0.0, 0.0};
}

}  // namespace

void SystemParams::validate() const {
  if (!(theta > 0.0)) throw DomainError("SystemParams: theta must be > 0");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw DomainError("SystemParams: epsilon must lie in (0, 1)");
  if (!(v_b > 0.0)) throw DomainError("SystemParams: v_b must be > 0");
  if (!(omega_w > 0.0)) throw DomainError("SystemParams: omega_w must be > 0");
  if (!(c4 > 0.0)) throw DomainError("SystemParams: c4 must be > 0");
}

MatsubaraTable build_table(const DampingModel& m, double theta, long n_max) {
  if (!(theta > 0.0)) throw DomainError("build_table: theta must be > 0");
  if (n_max < 100) throw DomainError("build_table: n_max must be >= 100");

  MatsubaraTable t;
  t.model = m;
  t.theta = theta;
  t.n_max = n_max;
  t.nu.resize(n_max + 1);
  t.zeta.resize(n_max + 1);
  t.u.resize(n_max + 1);

  for (long n = 0; n <= n_max; ++n) {
    const double nu = 2.0 * kPi * static_cast<double>(n) / theta;
    const double zeta = (n == 0) ? 0.0 : zeta_coeff(m, nu);
    const double den = nu * nu + zeta - 1.0;
    if (std::abs(den) < kPoleGuard)
      throw PoleError("build_table: Matsubara denominator within 1e-9 of zero at n=" +
                      std::to_string(n));
    t.nu[n] = nu;
    t.zeta[n] = zeta;
    t.u[n] = 1.0 / den;
  }
  // Below the first pole every denominator with n >= 1 is positive.
  if (t.u[1] < 0.0)
    throw PoleError("build_table: theta above the first Matsubara pole (nu_1^2 + zeta_1 < 1)");
  return t;
}

SumResult lambda_cap(const MatsubaraTable& t) {
  numerics::Kahan acc;
  for (long n = 1; n <= t.n_max; ++n) acc.add(t.u[n]);

  const auto pf = u_fraction(t.model);
  const double tail = detail::euler_maclaurin_tail(pf, t.kappa(), t.n_max);
  const double v = t.kappa() * static_cast<double>(t.n_max + 1);
  // Next Euler-Maclaurin term would be ~ kappa^5 f^(5)(v)/30240.
  const double tail_err =
      std::abs(std::pow(t.kappa(), 5) * 120.0 * pf.eval(v) / std::pow(v, 5) / 30240.0) +
      1e-16 * std::abs(acc.get());

  SumResult r;
  r.tail = (2.0 / t.theta) * tail;
  r.value = (-1.0 + 2.0 * acc.get()) / t.theta + r.tail;
  r.tail_error = (2.0 / t.theta) * tail_err;
  r.terms = t.n_max;
  r.tail_ok = std::isfinite(r.value);
  return r;
}

SumResult omega_cap(const MatsubaraTable& t) {
  const auto pf = w_fraction(t.model);
  if (!t.model.is_drude() && t.model.gamma > 0.0 && residue_sum(pf) > 1e-12)
    throw UnsupportedError(
        "omega_cap diverges logarithmically for strict Ohmic damping; "
        "use a Drude cutoff");

  numerics::Kahan acc;
  for (long n = 1; n <= t.n_max; ++n) acc.add(t.u[n] * (t.zeta[n] - 1.0));

  const double tail = detail::euler_maclaurin_tail(pf, t.kappa(), t.n_max);
  const double v = t.kappa() * static_cast<double>(t.n_max + 1);
  const double tail_err =
      std::abs(std::pow(t.kappa(), 5) * 120.0 * pf.eval(v) / std::pow(v, 5) / 30240.0) +
      1e-16 * std::abs(acc.get());

  SumResult r;
  r.tail = (2.0 / t.theta) * tail;
  r.value = (1.0 + 2.0 * acc.get()) / t.theta + r.tail;
  r.tail_error = (2.0 / t.theta) * tail_err;
  r.terms = t.n_max;
  r.tail_ok = std::isfinite(r.value);
  return r;
}

double theta_critical(const DampingModel& m, double tol, long n_max) {
  const double omega_r = detail::grote_hynes_root(m);
  const double theta_pole = 2.0 * kPi / omega_r;
  auto lam = [&](double theta) { return lambda_cap(build_table(m, theta, n_max)).value; };

  double lo = 0.01;
  double f_lo = lam(lo);
  if (f_lo >= 0.0) throw NumericalError("theta_critical: Lambda not negative at theta=0.01");

  double hi = lo;
  double f_hi = f_lo;
  bool bracketed = false;
  while (hi < 0.999 * theta_pole) {
    hi = std::min(hi * 1.5, 0.999 * theta_pole);
    f_hi = lam(hi);
    if (f_hi >= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (!bracketed)
    throw NumericalError("theta_critical: no sign change of Lambda below the first pole");

  // Bisection with a secant proposal when it stays inside the bracket.
  for (int it = 0; it < 200 && (hi - lo) > tol * 0.5; ++it) {
    double mid = lo + (hi - lo) * f_lo / (f_lo - f_hi);
    if (!(mid > lo + 0.05 * (hi - lo) && mid < hi - 0.05 * (hi - lo)))
      mid = 0.5 * (lo + hi);
    const double f_mid = lam(mid);
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

ProductResult ratio_product(const MatsubaraTable& t, double omega_w) {
  if (!(omega_w > 0.0)) throw DomainError("ratio_product: omega_w must be > 0");
  const double ww2 = omega_w * omega_w;

  numerics::Kahan log_acc;
  for (long n = 1; n <= t.n_max; ++n) {
    const double den = t.nu[n] * t.nu[n] + t.zeta[n] - 1.0;
    if (den <= 0.0)
      throw PoleError("ratio_product: nonpositive barrier factor at n=" + std::to_string(n));
    log_acc.add(std::log1p((1.0 + ww2) / den));
  }

  detail::LogRatioPF lr;
  lr.num_roots = detail::shifted_char_roots(t.model, ww2);
  lr.den_roots = detail::shifted_char_roots(t.model, -1.0);
  const double log_tail = detail::euler_maclaurin_tail(lr, t.kappa(), t.n_max);
  const double v = t.kappa() * static_cast<double>(t.n_max + 1);
  const double tail_err =
      std::abs(std::pow(t.kappa(), 5) * 24.0 * lr.eval(v) / std::pow(v, 4) / 30240.0) +
      1e-15 * std::abs(log_acc.get());

  ProductResult r;
  r.log_tail = log_tail;
  r.log_value = log_acc.get() + log_tail;
  r.value = std::exp(r.log_value);
  r.tail_error = tail_err;
  r.terms = t.n_max;
  r.tail_ok = std::isfinite(r.value);
  return r;
}

namespace {

ProductResult log_ratio_run(const MatsubaraTable& t, detail::LogRatioPF lr,
                            const char* who, double shift_c) {
  // Divergence check: the combined log ratio decays like 1/nu^2 only if the
  // root sums of numerator and denominator agree.
  cdouble num_sum = 0.0, den_sum = 0.0;
  for (const auto& y : lr.num_roots) num_sum += y;
  for (const auto& z : lr.den_roots) den_sum += z;
  if (std::abs(num_sum - den_sum) > 1e-9 * (1.0 + std::abs(den_sum)))
    throw UnsupportedError(std::string(who) +
                           " diverges for strict Ohmic damping; use a Drude cutoff");

  numerics::Kahan log_acc;
  for (long n = 1; n <= t.n_max; ++n) {
    const double nu2 = t.nu[n] * t.nu[n];
    if (nu2 + t.zeta[n] + shift_c <= 0.0)
      throw PoleError(std::string(who) + ": nonpositive factor at n=" + std::to_string(n));
    log_acc.add(-std::log1p((t.zeta[n] + shift_c) / nu2));
  }

  const double log_tail = detail::euler_maclaurin_tail(lr, t.kappa(), t.n_max);
  const double v = t.kappa() * static_cast<double>(t.n_max + 1);
  const double tail_err =
      std::abs(std::pow(t.kappa(), 5) * 24.0 * lr.eval(v) / std::pow(v, 4) / 30240.0) +
      1e-15 * std::abs(log_acc.get());

  ProductResult r;
  r.log_tail = log_tail;
  r.log_value = log_acc.get() + log_tail;
  r.value = std::exp(r.log_value);
  r.tail_error = tail_err;
  r.terms = t.n_max;
  r.tail_ok = std::isfinite(r.value);
  return r;
}

}  // namespace

ProductResult fluct_product(const MatsubaraTable& t) {
  detail::LogRatioPF lr;
  lr.num_roots = numerator_roots_nu2(t.model);
  lr.den_roots = detail::shifted_char_roots(t.model, -1.0);
  return log_ratio_run(t, lr, "fluct_product", -1.0);
}

ProductResult well_product(const MatsubaraTable& t, double omega_w) {
  if (!(omega_w > 0.0)) throw DomainError("well_product: omega_w must be > 0");
  detail::LogRatioPF lr;
  lr.num_roots = numerator_roots_nu2(t.model);
  lr.den_roots = detail::shifted_char_roots(t.model, omega_w * omega_w);
  return log_ratio_run(t, lr, "well_product", omega_w * omega_w);
}

}  // namespace qkr
