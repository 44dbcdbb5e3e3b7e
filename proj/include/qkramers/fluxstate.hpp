#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "qkramers/dynamics.hpp"
#include "qkramers/numerics/special.hpp"

namespace qkr {

enum class NormMode { relative, drude_absolute };

// Quasi-stationary flux state across a damped parabolic barrier. In relative
// normalization the equilibrium density matrix equals one at the barrier
// top; drude_absolute keeps the fluctuation-determinant prefactor (finite
// only when the fluctuation product converges).
struct FluxState {
  DampingModel model;
  double theta = 0.0;
  double theta_c = 0.0;
  double lambda = 0.0;             // < 0
  std::optional<double> omega;     // absent for strict Ohmic damping
  double omega_r = 0.0;
  double residue_gh = 0.0;
  NormMode mode = NormMode::relative;
  double prefactor = 1.0;
  long n_max = 0;
};

// Builds the state; enforces theta <= (1 - theta_guard) * theta_c and the
// branch condition omega_r * theta < pi.
FluxState make_flux_state(const DampingModel& m, double theta,
                          NormMode mode = NormMode::relative, long n_max = 10000,
                          double theta_guard = 0.05);

// Equilibrium density matrix in difference/sum coordinates.
cdouble rho_theta(const FluxState& st, double x_f, double r_f);

// Nonequilibrium form factor at finite time (single-pole regime) and its
// stationary limit.
cdouble form_factor_t(const FluxState& st, double x_f, double r_f, double t);
cdouble form_factor_stationary(const FluxState& st, double x_f, double r_f);

// Stationary flux solution rho_theta * form factor, assembled through the
// scaled error function so large off-top exponents cannot overflow.
cdouble rho_flux(const FluxState& st, double x_f, double r_f);

struct FluxProfileRow {
  double q;
  double g_diag;
};

// Diagonal form-factor samples g(0, q) for plotting/CSV emission.
std::vector<FluxProfileRow> flux_profile(const FluxState& st, std::span<const double> q);

}  // namespace qkr
