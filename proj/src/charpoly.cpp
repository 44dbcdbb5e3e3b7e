#include "qkramers/detail/charpoly.hpp"

#include <algorithm>
#include <cmath>

namespace qkr::detail {

namespace {

// Roots of z^2 + b z + c with real coefficients.
std::vector<cdouble> quadratic_roots(double b, double c) {
  const double disc = b * b - 4.0 * c;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Stable form: compute the larger-magnitude root first.
    const double q = -0.5 * (b + (b >= 0.0 ? root : -root));
    double z1 = q;
    double z2 = (q != 0.0) ? c / q : -0.5 * (b - (b >= 0.0 ? root : -root));
    return {cdouble(z1, 0.0), cdouble(z2, 0.0)};
  }
  const double re = -0.5 * b;
  const double im = 0.5 * std::sqrt(-disc);
  return {cdouble(re, im), cdouble(re, -im)};
}

// Monic cubic z^3 + a2 z^2 + a1 z + a0: depressed-cubic closed form with a
// complex Newton polish on each root.
std::vector<cdouble> cubic_roots(double a2, double a1, double a0) {
  const double p = a1 - a2 * a2 / 3.0;
  const double q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const double shift = -a2 / 3.0;
  std::vector<cdouble> roots;

  const double disc = 0.25 * q * q + p * p * p / 27.0;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-0.5 * q + sq);
    const double v = std::cbrt(-0.5 * q - sq);
    const double t0 = u + v;
    roots = {cdouble(shift + t0, 0.0),
             cdouble(shift - 0.5 * t0, 0.5 * std::sqrt(3.0) * (u - v)),
             cdouble(shift - 0.5 * t0, -0.5 * std::sqrt(3.0) * (u - v))};
  } else {
    // Three real roots via the trigonometric form.
    const double r = std::sqrt(-p * p * p / 27.0);
    const double phi = std::acos(std::clamp(-0.5 * q / r, -1.0, 1.0));
    const double mag = 2.0 * std::sqrt(-p / 3.0);
    for (int k = 0; k < 3; ++k)
      roots.push_back(cdouble(shift + mag * std::cos((phi + 2.0 * M_PI * k) / 3.0), 0.0));
  }

  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const cdouble f = ((z + a2) * z + a1) * z + a0;
      const cdouble fp = (3.0 * z + 2.0 * a2) * z + a1;
      if (std::abs(fp) == 0.0) break;
      z -= f / fp;
    }
    if (std::abs(z.imag()) < 1e-13 * (1.0 + std::abs(z.real()))) z = {z.real(), 0.0};
  }
  return roots;
}

}  // namespace

std::vector<cdouble> shifted_char_roots(const DampingModel& m, double c) {
  if (!m.is_drude()) return quadratic_roots(m.gamma, c);
  return cubic_roots(m.omega_d, m.gamma * m.omega_d + c, c * m.omega_d);
}

double grote_hynes_root(const DampingModel& m) {
  // f(z) = z^2 + z gamma_hat(z) - 1 is monotone increasing on [0, 1] with
  // f(0) = -1 and f(1) = gamma_hat(1) >= 0.
  auto f = [&m](double z) { return z * z + z * gamma_hat(m, z) - 1.0; };
  double lo = 0.0, hi = 1.0;
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fz = f(z);
    if (fz > 0.0)
      hi = z;
    else
      lo = z;
    const double fp = 2.0 * z + gamma_hat(m, z) + z * gamma_hat_prime(m, z);
    double next = z - fz / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) < 1e-16 * (1.0 + z)) {
      z = next;
      break;
    }
    z = next;
  }
  return z;
}

double RationalPF::eval(double nu) const {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) acc += residues[i] / (nu - poles[i]);
  return acc.real();
}

double RationalPF::deriv(double nu) const {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const cdouble d = nu - poles[i];
    acc -= residues[i] / (d * d);
  }
  return acc.real();
}

double RationalPF::third(double nu) const {
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const cdouble d = nu - poles[i];
    acc -= 6.0 * residues[i] / (d * d * d * d);
  }
  return acc.real();
}

double RationalPF::integral_to_inf(double nu) const {
  // Valid because the residues sum to zero: the leading 1/nu pieces cancel.
  cdouble acc = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i)
    acc -= residues[i] * std::log(nu - poles[i]);
  return acc.real();
}

RationalPF make_pf(const std::vector<double>& num_coeffs,
                   const std::vector<cdouble>& den_roots) {
  RationalPF pf;
  pf.poles = den_roots;
  pf.residues.resize(den_roots.size());
  for (std::size_t i = 0; i < den_roots.size(); ++i) {
    const cdouble z = den_roots[i];
    cdouble num = 0.0;
    for (std::size_t k = num_coeffs.size(); k-- > 0;) num = num * z + num_coeffs[k];
    cdouble dp = 1.0;
    for (std::size_t j = 0; j < den_roots.size(); ++j)
      if (j != i) dp *= (z - den_roots[j]);
    pf.residues[i] = num / dp;
  }
  return pf;
}

double LogRatioPF::eval(double nu) const {
  cdouble acc = 0.0;
  for (const auto& y : num_roots) acc += std::log(nu - y);
  for (const auto& z : den_roots) acc -= std::log(nu - z);
  return acc.real();
}

double LogRatioPF::deriv(double nu) const {
  cdouble acc = 0.0;
  for (const auto& y : num_roots) acc += 1.0 / (nu - y);
  for (const auto& z : den_roots) acc -= 1.0 / (nu - z);
  return acc.real();
}

double LogRatioPF::third(double nu) const {
  cdouble acc = 0.0;
  for (const auto& y : num_roots) {
    const cdouble d = nu - y;
    acc += 2.0 / (d * d * d);
  }
  for (const auto& z : den_roots) {
    const cdouble d = nu - z;
    acc -= 2.0 / (d * d * d);
  }
  return acc.real();
}

double LogRatioPF::integral_to_inf(double nu) const {
  // Antiderivative of log(nu - r) is (nu-r)log(nu-r) - (nu-r); the boundary
  // terms at infinity cancel because root counts and root sums match.
  auto phi = [nu](const cdouble& r) {
    const cdouble d = nu - r;
    return d * std::log(d) - d;
  };
  cdouble acc = 0.0;
  for (const auto& y : num_roots) acc -= phi(y);
  for (const auto& z : den_roots) acc += phi(z);
  return acc.real();
}

}  // namespace qkr::detail
