#include "qkramers/numerics/special.hpp"

#include <cmath>
#include <numbers>

#include "qkramers/errors.hpp"

namespace qkr::numerics {

namespace {

constexpr double kPi = std::numbers::pi;

// Step of the midpoint rule. The neglected Poisson images scale like
// exp(-(pi/h)^2) ~ 1e-68, the Gaussian truncation at |t| <= 7 like e^{-49}.
constexpr double kH = 0.25;
constexpr double kTmax = 7.0;

cdouble faddeeva_grid_sum(cdouble z, double offset) {
  const long k_lo = static_cast<long>(std::floor((-kTmax - offset) / kH));
  const long k_hi = static_cast<long>(std::ceil((kTmax - offset) / kH));
  cdouble acc = 0.0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const double t = (static_cast<double>(k) + offset) * kH;
    acc += std::exp(-t * t) / (z - t);
  }
  return cdouble(0.0, kH / kPi) * acc;
}

}  // namespace

cdouble faddeeva_w(cdouble z) {
  // Pick the grid (integer or half-integer offset) farther from Re z so that
  // neither a sum term nor the pole-correction denominator degenerates.
  const double x = z.real();
  const double frac = x / kH - std::floor(x / kH);
  const double dist_int = std::min(frac, 1.0 - frac);
  const double offset = (dist_int > 0.25) ? 0.0 : 0.5;

  cdouble w = faddeeva_grid_sum(z, offset);

  // Residue picked up by the Poisson summation, 2 e^{-z^2} q/(1-q) with
  // q = exp(2 pi i (z - offset*h)/h). The pole is crossed only for
  // Im z < pi/h; beyond that the image integrals are O(e^{-(pi/h)^2}).
  if (z.imag() < kPi / kH) {
    const cdouble q = std::exp(cdouble(0.0, 2.0 * kPi / kH) * (z - offset * kH));
    const cdouble expo = -z * z + cdouble(0.0, 2.0 * kPi / kH) * (z - offset * kH);
    if (expo.real() > -745.0) w -= 2.0 * std::exp(expo) / (1.0 - q);
  }
  return w;
}

cdouble erfc_complex(cdouble z) {
  if (z.imag() == 0.0) return {std::erfc(z.real()), 0.0};
  if (z.real() < 0.0) return 2.0 - erfc_complex(-z);
  // erfc(z) = e^{-z^2} w(iz); iz lies in the closed upper half-plane here.
  const cdouble w = faddeeva_w(cdouble(-z.imag(), z.real()));
  const cdouble z2 = z * z;
  if (z2.real() < -700.0)
    throw DomainError("erfc_complex overflow; use erfcx_complex for scaled values");
  return std::exp(-z2) * w;
}

cdouble erfcx_complex(cdouble z) {
  if (z.real() >= 0.0) return faddeeva_w(cdouble(-z.imag(), z.real()));
  const cdouble z2 = z * z;
  if (z2.real() > 700.0)
    throw DomainError("erfcx_complex overflow for large negative real part");
  return 2.0 * std::exp(z2) - faddeeva_w(cdouble(z.imag(), -z.real()));
}

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
  double acc = 0.0;
  while (x < 20.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ ln x - 1/(2x) - 1/(12x^2) + 1/(120x^4) - 1/(252x^6) + ...
  const double series =
      std::log(x) - 0.5 * inv -
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return acc + series;
}

double trigamma(double x) {
  if (!(x > 0.0)) throw DomainError("trigamma requires x > 0");
  double acc = 0.0;
  while (x < 20.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi'(x) ~ 1/x + 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7) - ...
  const double series =
      inv * (1.0 + 0.5 * inv +
             inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))));
  return acc + series;
}

double zeta_tail(double s, double n) {
  if (!(s > 1.0)) throw DomainError("zeta_tail requires s > 1");
  const double v = n + 1.0;
  const double f = std::pow(v, -s);
  // Euler-Maclaurin: integral + f/2 - f'/12 + f'''/720.
  const double integral = v * f / (s - 1.0);
  const double fp = -s * f / v;
  const double fppp = -s * (s + 1.0) * (s + 2.0) * f / (v * v * v);
  return integral + 0.5 * f - fp / 12.0 + fppp / 720.0;
}

}  // namespace qkr::numerics
