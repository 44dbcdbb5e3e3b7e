#pragma once

#include <complex>

namespace qkr::numerics {

using cdouble = std::complex<double>;

// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im(z) >= 0.
// Midpoint-rule evaluation of the defining Hilbert-transform integral with
// the Poisson-summation pole correction; uniformly ~1e-14 accurate on the
// closed upper half-plane.
cdouble faddeeva_w(cdouble z);

// Complementary error function for complex argument, relative accuracy
// better than 1e-12. May underflow to 0 for large positive real parts.
cdouble erfc_complex(cdouble z);

// Scaled variant exp(z^2) erfc(z); finite wherever erfc does not overflow
// the scaling, i.e. for Re(z) >= 0 and moderate |Im z|.
cdouble erfcx_complex(cdouble z);

// Digamma / trigamma for positive real argument (recurrence + asymptotics).
double digamma(double x);
double trigamma(double x);

// Tail of the Riemann zeta sum: sum_{n > N} n^{-s}, s > 1.
double zeta_tail(double s, double n);

}  // namespace qkr::numerics
