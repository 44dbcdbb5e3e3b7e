#pragma once

#include <complex>
#include <string>

#include "qkramers/errors.hpp"

namespace qkr {

// Damping specification for the heat bath. Strict Ohmic damping has a
// frequency-independent friction coefficient; the Drude model regularizes it
// with an exponential memory kernel of cutoff frequency omega_d. Both
// parameters are dimensionless (frequencies in units of the barrier
// frequency, times in units of its inverse).
struct DampingModel {
  enum class Kind { ohmic, drude };

  Kind kind = Kind::ohmic;
  double gamma = 0.0;
  double omega_d = 0.0;  // Drude cutoff; meaningful for kind == drude only

  static DampingModel Ohmic(double gamma);
  static DampingModel Drude(double gamma, double omega_d);

  bool is_drude() const { return kind == Kind::drude; }
  // True when pointwise kernel quantities exist: Drude, or Ohmic with
  // vanishing friction (gamma == 0 has no distributional parts).
  bool has_smooth_kernel() const { return is_drude() || gamma == 0.0; }
  std::string describe() const;
};

// Laplace transform of the damping kernel, gamma_hat(z).
std::complex<double> gamma_hat(const DampingModel& m, std::complex<double> z);
double gamma_hat(const DampingModel& m, double z);
// d gamma_hat / dz on the real axis.
double gamma_hat_prime(const DampingModel& m, double z);

// Classical friction kernel gamma(s), s >= 0. For strict Ohmic damping the
// kernel is 2 gamma delta(s) and has no pointwise value.
double gamma_kernel(const DampingModel& m, double s);

// Bath spectral density I(omega); the cosine-transform pre-image of the
// friction kernel.
double spectral_density(const DampingModel& m, double omega);

// zeta = |nu| gamma_hat(|nu|), the Matsubara coefficient of the
// imaginary-time kernel.
double zeta_coeff(const DampingModel& m, double nu);

struct FourierCoeffs {
  double g;  // even in the index
  double f;  // odd in the index
};

// Closed forms of the bath-kernel frequency integrals for the Drude model,
// combinations of exp(-omega_d s) and exp(-|nu_n| s). The index n may be
// negative. Rejects strict Ohmic damping with gamma > 0, whose g-integral is
// distributional.
FourierCoeffs fourier_coeffs(const DampingModel& m, long n, double theta, double s);

struct KernelValue {
  double value;
  long terms;
  double tail_bound;  // magnitude estimate of the neglected remainder
};

// Imaginary-time kernel k(sigma) on the open interval (0, theta),
// evaluated with the slowly-converging Fourier pieces resummed in closed
// form; only an absolutely convergent remainder is truncated at n_terms.
KernelValue k_kernel(const DampingModel& m, double theta, double sigma, long n_terms);

// Literal n_terms-term Fourier partial sum of k(sigma). Converges slowly in
// the interior and carries the delta-comb spikes near the endpoints; useful
// for integral checks of the sum rule over a full period.
double k_kernel_partial_sum(const DampingModel& m, double theta, double sigma,
                            long n_terms);

}  // namespace qkr
