#pragma once

#include <complex>
#include <vector>

#include "qkramers/bath.hpp"

namespace qkr::detail {

using cdouble = std::complex<double>;

// Roots of the rational-cleared form of nu^2 + nu gamma_hat(nu) + c.
// For Drude damping this is the cubic
//   nu^3 + omega_d nu^2 + (gamma omega_d + c) nu + c omega_d,
// for Ohmic the quadratic nu^2 + gamma nu + c.
std::vector<cdouble> shifted_char_roots(const DampingModel& m, double c);

// Positive real root of nu^2 + nu gamma_hat(nu) - 1 (the Grote-Hynes
// frequency), bracketed on (0, 1] and polished to residual < 1e-12.
double grote_hynes_root(const DampingModel& m);

// Partial-fraction representation sum_i c_i / (nu - z_i) of a rational
// function that decays at least as 1/nu^2 (sum of residues vanishes).
struct RationalPF {
  std::vector<cdouble> poles;
  std::vector<cdouble> residues;

  double eval(double nu) const;
  double deriv(double nu) const;
  double third(double nu) const;
  double integral_to_inf(double nu) const;
};

// Residues of num/den at the simple roots of den, with num evaluated as a
// polynomial in nu (coefficients in ascending order).
RationalPF make_pf(const std::vector<double>& num_coeffs,
                   const std::vector<cdouble>& den_roots);

// log(prod (nu - y_i)) - log(prod (nu - z_i)) with matched degree and equal
// root sums, so that the tail integral converges.
struct LogRatioPF {
  std::vector<cdouble> num_roots;
  std::vector<cdouble> den_roots;

  double eval(double nu) const;
  double deriv(double nu) const;
  double third(double nu) const;
  double integral_to_inf(double nu) const;
};

// Euler-Maclaurin tail sum_{n > n0} f(kappa n) for a smooth integrand given
// through its value/derivative/integral interface.
template <class F>
double euler_maclaurin_tail(const F& f, double kappa, long n0) {
  const double v = kappa * static_cast<double>(n0 + 1);
  return f.integral_to_inf(v) / kappa + 0.5 * f.eval(v) - kappa * f.deriv(v) / 12.0 +
         kappa * kappa * kappa * f.third(v) / 720.0;
}

}  // namespace qkr::detail
