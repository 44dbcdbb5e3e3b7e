#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "qkramers/matsubara.hpp"

namespace qkr {

using cdouble = std::complex<double>;

// Poles and residues of the barrier propagator transform
// G+_hat(z) = 1/(z^2 + z gamma_hat(z) - 1) after clearing the rational
// denominator of gamma_hat. Exactly one pole is real and positive: the
// Grote-Hynes frequency.
struct PoleDecomposition {
  DampingModel model;
  std::vector<cdouble> poles;
  std::vector<cdouble> residues;
  std::size_t gh_index = 0;

  double omega_r() const { return poles[gh_index].real(); }
  double residue_gh() const { return residues[gh_index].real(); }
};

// Grote-Hynes frequency: positive root of z^2 + z gamma_hat(z) = 1.
double grote_hynes(const DampingModel& m);

PoleDecomposition decompose_gplus(const DampingModel& m);

// d^order/dt^order of the propagator G+(t) for t >= 0; order 0 returns 0 for
// t < 0 (step-function convention), derivatives reject t < 0.
double gplus(const PoleDecomposition& d, double t, int order = 0);

// A(t) = -G+(t)/2 and its single-pole asymptotic form.
double a_of_t(const PoleDecomposition& d, double t);
double a_asymptotic(const PoleDecomposition& d, double t);

namespace detail_dyn {
// Exponential-series coefficients of the back-action sums: C(s) =
// coeff_wd e^{-omega_d s} + sum_n coeff[n] e^{-nu_n s} (+ analytic tail).
struct BackActionCache {
  double c1_wd = 0.0, c2_wd = 0.0;
  std::vector<double> c1_exp, c2_exp;  // index n = 1..n_max
  double tail1_scale = 0.0, tail2_scale = 0.0;
};
}  // namespace detail_dyn

// Dynamics context at a damped parabolic barrier: propagator poles plus the
// Matsubara data entering the bath back-action sums.
struct BarrierDynamics {
  PoleDecomposition decomposition;
  MatsubaraTable table;
  double lambda = 0.0;
  double c1_quadrature_tol = 1e-9;
  std::shared_ptr<const detail_dyn::BackActionCache> back_action;

  double theta() const { return table.theta; }
  const DampingModel& model() const { return table.model; }
};

BarrierDynamics make_barrier_dynamics(const DampingModel& m, double theta,
                                      long n_max = 10000);

struct CValues {
  double c1 = 0.0;
  double c2 = 0.0;
  double tail_error = 0.0;
};

// Bath back-action sums C1(s), C2(s) over the closed-form Fourier
// coefficients. Requires a smooth kernel (Drude, or gamma == 0).
CValues c_functions(const BarrierDynamics& dyn, double s);

// S(t) = Lambda dG+/dt + int_0^t C1(s) G+(t-s) ds and derivatives
// (adaptive quadrature), plus the single-pole asymptotic form.
double s_of_t(const BarrierDynamics& dyn, double t);
double s_dot(const BarrierDynamics& dyn, double t);
double s_ddot(const BarrierDynamics& dyn, double t);
double s_asymptotic(const BarrierDynamics& dyn, double t);

// Difference-coordinate minimal path with endpoints x_i, x_f; homogeneous in
// the backward propagator.
double x_path(const PoleDecomposition& d, double t_total, double x_i, double x_f,
              double s);

// Sum-coordinate minimal path driven by the imaginary-time average rbar
// through F(s) = rbar C1(s)/Lambda.
double r_path(const BarrierDynamics& dyn, double t_total, double r_i, double r_f,
              double rbar, double s);

// Minimal imaginary-time path q(sigma) on (0, theta) for endpoint averages
// (xbar, rbar) coupled to a sampled real-time difference path x(s) on a
// uniform grid over [0, t_total]. The path is complex when the real-time
// coupling functionals are nonzero.
cdouble imaginary_path(const BarrierDynamics& dyn, double xbar, double rbar,
                       std::span<const double> x_samples, double t_total,
                       double sigma);

}  // namespace qkr
