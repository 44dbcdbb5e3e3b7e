#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qkramers/numerics/quadrature.hpp"
#include "qkramers/numerics/special.hpp"

using qkr::numerics::cdouble;
using qkr::numerics::erfc_complex;
using qkr::numerics::erfcx_complex;
using qkr::numerics::faddeeva_w;

namespace {

// Quadrature oracle for the complementary error function along the ray
// t = z + s, s real: erfc(z) = (2/sqrt(pi)) int_0^inf exp(-(z+s)^2) ds.
cdouble erfc_by_quadrature(cdouble z) {
  auto f = [z](double s) { return std::exp(-(z + s) * (z + s)); };
  const cdouble integral = qkr::numerics::integrate(f, 0.0, 45.0, 1e-14, 1e-18, 4000);
  return 2.0 / std::sqrt(std::numbers::pi) * integral;
}

}  // namespace

TEST_CASE("adaptive quadrature on known integrals") {
  auto gauss = [](double t) { return std::exp(-t * t); };
  const double v = qkr::numerics::integrate(gauss, -8.0, 8.0, 1e-12);
  CHECK(v == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));

  auto osc = [](double t) { return std::cos(10.0 * t) * std::exp(-t); };
  const double w = qkr::numerics::integrate(osc, 0.0, 40.0, 1e-12);
  // int_0^inf cos(10 t) e^-t dt = 1/101
  CHECK(w == doctest::Approx(1.0 / 101.0).epsilon(1e-10));

  auto sharp = [](double t) { return 1.0 / (1e-4 + t * t); };
  const double s = qkr::numerics::integrate(sharp, -1.0, 1.0, 1e-10);
  CHECK(s == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
}

TEST_CASE("erfc_complex basic values") {
  CHECK(erfc_complex({0.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(erfc_complex({30.0, 0.0})) < 1e-300);
  CHECK(erfc_complex({-30.0, 0.0}).real() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("erfc_complex matches the real error function on the axis") {
  for (double x = -6.0; x <= 6.0; x += 0.37) {
    const cdouble v = erfc_complex({x, 0.0});
    CHECK(v.imag() == 0.0);
    CHECK(v.real() == doctest::Approx(std::erfc(x)).epsilon(1e-13));
  }
  // Slightly off-axis values must agree with the on-axis limit.
  for (double x = -4.0; x <= 4.0; x += 0.61) {
    const cdouble v = erfc_complex({x, 1e-14});
    CHECK(v.real() == doctest::Approx(std::erfc(x)).epsilon(1e-10));
  }
}

TEST_CASE("erfc_complex against the quadrature oracle") {
  const cdouble cases[] = {{1.0, 1.0},  {0.3, -2.0}, {2.5, 0.7},  {0.0, 1.5},
                           {4.2, 3.3},  {-1.2, 0.8}, {0.01, 0.02}};
  for (const cdouble z : cases) {
    const cdouble ours = erfc_complex(z);
    const cdouble oracle = erfc_by_quadrature(z);
    CHECK(std::abs(ours - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
  }
}

TEST_CASE("erfc_complex conjugation and reflection symmetries") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const cdouble z{u(rng), u(rng)};
    const cdouble a = erfc_complex(std::conj(z));
    const cdouble b = std::conj(erfc_complex(z));
    CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
    const cdouble sum = erfc_complex(z) + erfc_complex(-z);
    CHECK(std::abs(sum - 2.0) <= 1e-12);
  }
}

TEST_CASE("erfcx_complex is the scaled variant") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 30; ++i) {
    const cdouble z{u(rng), u(rng) - 1.5};
    const cdouble lhs = erfcx_complex(z);
    const cdouble rhs = std::exp(z * z) * erfc_complex(z);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
  }
  // Large real argument: asymptotic 1/(z sqrt(pi)).
  const double big = 150.0;
  const double asym = 1.0 / (big * std::sqrt(std::numbers::pi));
  CHECK(erfcx_complex({big, 0.0}).real() == doctest::Approx(asym).epsilon(1e-4));
}

TEST_CASE("faddeeva function special values") {
  CHECK(faddeeva_w({0.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-13));
  // w(iy) = erfcx(y) for real y > 0.
  CHECK(faddeeva_w({0.0, 1.0}).real() ==
        doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-13));
}

TEST_CASE("digamma and trigamma against series and recurrences") {
  // psi(1) = -euler_gamma, psi(2) = 1 - euler_gamma.
  const double euler = 0.57721566490153286;
  CHECK(qkr::numerics::digamma(1.0) == doctest::Approx(-euler).epsilon(1e-13));
  CHECK(qkr::numerics::digamma(2.0) == doctest::Approx(1.0 - euler).epsilon(1e-13));
  // trigamma(1) = pi^2/6.
  CHECK(qkr::numerics::trigamma(1.0) ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 6.0).epsilon(1e-13));
  // Recurrence consistency at fractional arguments.
  for (double x = 0.3; x < 5.0; x += 0.7) {
    CHECK(qkr::numerics::digamma(x + 1.0) - qkr::numerics::digamma(x) ==
          doctest::Approx(1.0 / x).epsilon(1e-12));
    CHECK(qkr::numerics::trigamma(x) - qkr::numerics::trigamma(x + 1.0) ==
          doctest::Approx(1.0 / (x * x)).epsilon(1e-12));
  }
}

TEST_CASE("zeta tails against brute force") {
  // tail(n) - tail(M) telescopes to the finite block sum, which a direct
  // summation reproduces exactly.
  const long m = 2000000;
  for (double s : {2.0, 3.0, 4.0}) {
    for (long n : {100L, 1000L}) {
      double brute = 0.0;
      for (long k = m; k > n; --k) brute += std::pow(double(k), -s);
      const double block =
          qkr::numerics::zeta_tail(s, double(n)) - qkr::numerics::zeta_tail(s, double(m));
      CHECK(block == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}
