#pragma once

#include <optional>

#include "qkramers/fluxstate.hpp"
#include "qkramers/matsubara.hpp"

namespace qkr {

struct PlateauWindow {
  double t_min = 0.0;
  double t_max = 0.0;
  bool ok = false;
};

enum class MatchingStatus { ok, exceeded, impossible, unavailable };

struct MatchingReport {
  double ratio = 0.0;
  bool ok = false;
  MatchingStatus status = MatchingStatus::unavailable;
  double threshold = 0.1;
};

struct RateOptions {
  double theta_guard = 0.05;       // refuse theta above (1 - guard) * theta_c
  double matching_threshold = 0.1;
  double plateau_c = 3.0;          // t_min = plateau_c / omega_r
};

struct RateReport {
  double gamma_rate = 0.0;         // units of the barrier frequency
  double arrhenius = 0.0;          // exp(-theta v_b)
  double prefactor_classical = 0.0;  // omega_w omega_r / (2 pi)
  double quantum_factor = 0.0;     // Matsubara ratio product
  double theta = 0.0;
  double theta_c = 0.0;
  double omega_r = 0.0;
  MatchingReport matching;
  PlateauWindow plateau;
  bool theta_ok = false;
  long n_max = 0;
  double tail_error = 0.0;
};

// Partition function of the damped harmonic well, referenced to the barrier
// top: exp(theta v_b)/(theta omega_w) times the Matsubara well product.
double partition_well(const MatsubaraTable& t, const SystemParams& p);

// Thermally activated decay rate with quantum prefactor corrections and the
// validity diagnostics of the flux-state derivation.
RateReport decay_rate(const MatsubaraTable& t, const SystemParams& p,
                      const RateOptions& opt = {});

// Rate from the probability flux of the stationary flux state at the barrier
// top, Gamma = J / Z. Cross-checks the product-form rate and throws on
// disagreement beyond 1e-6 relative.
double flux_at_top(const FluxState& st, const MatsubaraTable& t, const SystemParams& p);

// First-order-in-gamma response coefficient kappa = Omega'(0) + Lambda'(0)
// for a Drude bath.
double kappa_sum(const DampingModel& drude, double theta, long n_max = 10000);

struct FirstOrderResponse {
  double lambda_prime = 0.0;
  double omega_prime = 0.0;
};

FirstOrderResponse lambda_omega_prime(const DampingModel& drude, double theta,
                                      long n_max = 10000);

// Localization condition of the flux state: ratio = |Lambda| eps^2 /
// (1 - omega_r^2 |Lambda| / Omega), flagged against the threshold.
MatchingReport matching_condition(double lambda, std::optional<double> omega,
                                  double omega_r, const SystemParams& p,
                                  double threshold = 0.1);

// Minimal Drude damping strength for which the flux state matches onto the
// well equilibrium state; valid for theta < pi.
double drude_min_gamma(const DampingModel& drude, double theta, const SystemParams& p,
                       long n_max = 10000);

// Time window with a well-defined stationary flux.
PlateauWindow plateau_window(double lambda, double omega_r, const SystemParams& p,
                             double plateau_c = 3.0);

}  // namespace qkr
