#pragma once

#include <vector>

#include "qkramers/bath.hpp"

namespace qkr {

// Scaled system parameters: theta is the dimensionless inverse temperature,
// epsilon the anharmonicity ratio (quantum length over anharmonic length),
// v_b the barrier height, omega_w the well frequency (units of the barrier
// frequency), c4 the leading anharmonic coefficient.
struct SystemParams {
  double theta;
  double epsilon;
  double v_b;
  double omega_w = 1.0;
  double c4 = 1.0;

  void validate() const;
};

// Truncated Matsubara data: nu[n] = 2 pi n / theta, zeta[n] = |nu| gamma_hat,
// u[n] = 1/(nu^2 + zeta - 1) for n = 0..n_max. Immutable after construction.
struct MatsubaraTable {
  DampingModel model;
  double theta = 0.0;
  long n_max = 0;
  std::vector<double> nu, zeta, u;

  double kappa() const { return nu.size() > 1 ? nu[1] : 0.0; }
};

MatsubaraTable build_table(const DampingModel& m, double theta, long n_max);

// Series value with its analytic tail and an estimate of what the tail
// correction itself neglects.
struct SumResult {
  double value = 0.0;
  double tail = 0.0;
  double tail_error = 0.0;
  long terms = 0;
  bool tail_ok = true;
};

// Matsubara sum Lambda: inverse-temperature-scaled analogue of the position
// variance of the inverted oscillator; negative above the critical
// temperature and vanishing at theta_c.
SumResult lambda_cap(const MatsubaraTable& t);

// Matsubara sum Omega (momentum-variance analogue). Diverges logarithmically
// for strict Ohmic damping with gamma > 0.
SumResult omega_cap(const MatsubaraTable& t);

// Smallest theta > 0 where Lambda vanishes, by geometric bracket expansion
// and bisection/secant refinement; absolute tolerance tol.
double theta_critical(const DampingModel& m, double tol = 1e-6, long n_max = 10000);

struct ProductResult {
  double value = 0.0;
  double log_value = 0.0;
  double log_tail = 0.0;
  double tail_error = 0.0;
  long terms = 0;
  bool tail_ok = true;
};

// prod_{n>=1} (nu^2 + zeta + omega_w^2)/(nu^2 + zeta - 1): the quantum
// correction factor of the escape rate.
ProductResult ratio_product(const MatsubaraTable& t, double omega_w);

// prod_{n>=1} nu^2 u_n: fluctuation determinant of the inverted oscillator.
// Diverges for strict Ohmic damping with gamma > 0.
ProductResult fluct_product(const MatsubaraTable& t);

// prod_{n>=1} nu^2/(nu^2 + zeta + omega_w^2): fluctuation part of the damped
// well partition function. Same Ohmic restriction as fluct_product.
ProductResult well_product(const MatsubaraTable& t, double omega_w);

}  // namespace qkr
