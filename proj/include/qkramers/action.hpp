#pragma once

#include <complex>

#include "qkramers/dynamics.hpp"

namespace qkr {

// Snapshot of all time-dependent quantities entering the minimal effective
// action at a fixed time t. Coordinates are accepted complex because the
// extremal shift has imaginary components.
struct ActionContext {
  double lambda = 0.0;   // < 0 above the critical temperature
  double omega = 0.0;
  double omega_r = 0.0;
  double t = 0.0;
  double a = 0.0, a_dot = 0.0, a_ddot = 0.0;
  double s = 0.0, s_dot = 0.0, s_ddot = 0.0;
};

// Context with A(t), S(t) and derivatives evaluated exactly (requires a
// smooth kernel: Drude or gamma == 0). omega must be supplied by the caller.
ActionContext exact_action_context(const BarrierDynamics& dyn, double omega, double t);

// Context in the single-pole regime omega_r * t >> 1, where the derivative
// ratios collapse to powers of omega_r.
ActionContext asymptotic_action_context(const BarrierDynamics& dyn, double omega,
                                        double t);

// Minimal imaginary-time action of the damped inverted oscillator.
cdouble sigma_theta(double lambda, double omega, cdouble xbar, cdouble rbar);

// Full bilinear real-time action in the endpoint coordinates.
cdouble sigma_t_full(const ActionContext& c, cdouble x_f, cdouble r_f, cdouble x_i,
                     cdouble r_i, cdouble xbar, cdouble rbar);

// Large-time reduction of sigma_t_full at xbar = x_i, rbar = r_i, keeping
// all terms of order x_i/A(t).
cdouble sigma_t_tilde(const ActionContext& c, cdouble x_f, cdouble r_f, cdouble x_i,
                      cdouble r_i);

struct ExtremalPoint {
  cdouble x_i0;
  cdouble r_i0;
};

// Stationary point of the large-time action over the initial coordinates.
ExtremalPoint extremal_point(const ActionContext& c, cdouble x_f, cdouble r_f);

// Quadratic action of the shifted initial coordinates about the extremum.
cdouble sigma_hat(const ActionContext& c, cdouble x_hat, cdouble r_hat);

}  // namespace qkr
