#include "qkramers/bath.hpp"

#include <cmath>
#include <numbers>

#include "qkramers/numerics/quadrature.hpp"
#include "qkramers/numerics/special.hpp"

namespace qkr {

namespace {
constexpr double kPi = std::numbers::pi;

// (b e^{-b s} - a e^{-a s}) / (b^2 - a^2), written through the mean and
// half-difference of the decay rates so the nearly-degenerate case a ~ b
// stays well conditioned; widely separated rates use the direct form.
double decay_ratio_g(double a, double b, double s) {
  const double m = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double hs = h * s;
  if (std::abs(hs) > 30.0)
    return (b * std::exp(-b * s) - a * std::exp(-a * s)) / ((b - a) * (b + a));
  const double sinhc = (std::abs(hs) < 1e-5) ? 1.0 + hs * hs / 6.0 : std::sinh(hs) / hs;
  return std::exp(-m * s) * (std::cosh(hs) - m * s * sinhc) / (a + b);
}

// (e^{-a s} - e^{-b s}) / (b^2 - a^2), same conditioning treatment.
double decay_ratio_f(double a, double b, double s) {
  const double m = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double hs = h * s;
  if (std::abs(hs) > 30.0)
    return (std::exp(-a * s) - std::exp(-b * s)) / ((b - a) * (b + a));
  const double sinhc = (std::abs(hs) < 1e-5) ? 1.0 + hs * hs / 6.0 : std::sinh(hs) / hs;
  return std::exp(-m * s) * s * sinhc / (a + b);
}
}  // namespace

DampingModel DampingModel::Ohmic(double gamma) {
  if (gamma < 0.0) throw DomainError("Ohmic damping requires gamma >= 0");
  return {Kind::ohmic, gamma, 0.0};
}

DampingModel DampingModel::Drude(double gamma, double omega_d) {
  if (gamma < 0.0) throw DomainError("Drude damping requires gamma >= 0");
  if (!(omega_d > 0.0)) throw DomainError("Drude damping requires omega_d > 0");
  return {Kind::drude, gamma, omega_d};
}

std::string DampingModel::describe() const {
  char buf[96];
  if (is_drude())
    std::snprintf(buf, sizeof buf, "drude(gamma=%g, omega_d=%g)", gamma, omega_d);
  else
    std::snprintf(buf, sizeof buf, "ohmic(gamma=%g)", gamma);
  return buf;
}

std::complex<double> gamma_hat(const DampingModel& m, std::complex<double> z) {
  if (!m.is_drude()) return {m.gamma, 0.0};
  if (std::abs(z + m.omega_d) < 1e-14 * m.omega_d)
    throw DomainError("gamma_hat evaluated at the Drude pole z = -omega_d");
  return m.gamma * m.omega_d / (m.omega_d + z);
}

double gamma_hat(const DampingModel& m, double z) {
  if (!m.is_drude()) return m.gamma;
  if (std::abs(z + m.omega_d) < 1e-14 * m.omega_d)
    throw DomainError("gamma_hat evaluated at the Drude pole z = -omega_d");
  return m.gamma * m.omega_d / (m.omega_d + z);
}

double gamma_hat_prime(const DampingModel& m, double z) {
  if (!m.is_drude()) return 0.0;
  const double d = m.omega_d + z;
  if (std::abs(d) < 1e-14 * m.omega_d)
    throw DomainError("gamma_hat_prime evaluated at the Drude pole");
  return -m.gamma * m.omega_d / (d * d);
}

double gamma_kernel(const DampingModel& m, double s) {
  if (s < 0.0) throw DomainError("gamma_kernel requires s >= 0");
  if (!m.is_drude()) {
    if (m.gamma == 0.0) return 0.0;
    throw UnsupportedError(
        "gamma_kernel is distributional (2 gamma delta(s)) for strict Ohmic damping");
  }
  return m.gamma * m.omega_d * std::exp(-m.omega_d * s);
}

double spectral_density(const DampingModel& m, double omega) {
  if (omega < 0.0) throw DomainError("spectral_density requires omega >= 0");
  if (!m.is_drude()) return m.gamma * omega;
  const double wd2 = m.omega_d * m.omega_d;
  return m.gamma * omega * wd2 / (omega * omega + wd2);
}

double zeta_coeff(const DampingModel& m, double nu) {
  if (nu < 0.0) throw DomainError("zeta_coeff requires nu >= 0");
  if (nu == 0.0) return 0.0;
  return nu * gamma_hat(m, nu);
}

FourierCoeffs fourier_coeffs(const DampingModel& m, long n, double theta, double s) {
  if (!(theta > 0.0)) throw DomainError("fourier_coeffs requires theta > 0");
  if (s < 0.0) throw DomainError("fourier_coeffs requires s >= 0");
  if (!m.is_drude()) {
    if (m.gamma == 0.0) return {0.0, 0.0};
    throw UnsupportedError(
        "fourier_coeffs g-integral is distributional for strict Ohmic damping");
  }
  const double nu = 2.0 * kPi * static_cast<double>(n) / theta;
  const double a = std::abs(nu);
  const double b = m.omega_d;
  const double c = m.gamma * b * b;
  return {c * decay_ratio_g(a, b, s), c * nu * decay_ratio_f(a, b, s)};
}

double k_kernel_partial_sum(const DampingModel& m, double theta, double sigma,
                            long n_terms) {
  if (!(theta > 0.0)) throw DomainError("k_kernel requires theta > 0");
  if (!(sigma >= 0.0 && sigma <= theta))
    throw DomainError("k_kernel_partial_sum is defined on [0, theta]");
  if (n_terms < 1) throw DomainError("k_kernel requires n_terms >= 1");
  numerics::Kahan acc;
  for (long n = 1; n <= n_terms; ++n) {
    const double nu = 2.0 * kPi * static_cast<double>(n) / theta;
    acc.add(zeta_coeff(m, nu) * std::cos(nu * sigma));
  }
  return (2.0 / theta) * acc.get();
}

KernelValue k_kernel(const DampingModel& m, double theta, double sigma, long n_terms) {
  if (!(theta > 0.0)) throw DomainError("k_kernel requires theta > 0");
  if (!(sigma > 0.0 && sigma < theta))
    throw DomainError("k_kernel is defined on the open interval (0, theta)");
  if (n_terms < 1) throw DomainError("k_kernel requires n_terms >= 1");

  if (m.gamma == 0.0) return {0.0, n_terms, 0.0};
  if (!m.is_drude())
    throw UnsupportedError(
        "k_kernel pointwise values require a Drude cutoff for gamma > 0");

  const double wd = m.omega_d;
  const double kappa = 2.0 * kPi / theta;
  const double x = kappa * sigma;  // in (0, 2 pi)

  // zeta_n = gamma wd - gamma wd^2/(wd + nu_n). The constant part and the
  // first two inverse powers of nu resum in closed form on (0, theta); only
  // the absolutely convergent 1/nu^3-class remainder is truncated.
  const double sum_cos = -0.5;
  const double sum_cos_over_nu = -std::log(2.0 * std::sin(0.5 * x)) / kappa;
  const double sum_cos_over_nu2 =
      (kPi * kPi / 6.0 - 0.5 * kPi * x + 0.25 * x * x) / (kappa * kappa);

  numerics::Kahan rem;
  for (long n = 1; n <= n_terms; ++n) {
    const double nu = kappa * static_cast<double>(n);
    rem.add(std::cos(nu * sigma) / (nu * nu * (wd + nu)));
  }
  const double remainder = rem.get();
  const double tail_bound = numerics::zeta_tail(3.0, static_cast<double>(n_terms)) /
                            (kappa * kappa * kappa);

  const double bracket =
      wd * sum_cos -
      wd * wd * (sum_cos_over_nu - wd * sum_cos_over_nu2 + wd * wd * remainder);
  const double scale = 2.0 * m.gamma / theta;
  return {scale * bracket, n_terms, scale * wd * wd * wd * wd * tail_bound};
}

}  // namespace qkr
