#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "qkramers/fluxstate.hpp"

using qkr::cdouble;
using qkr::DampingModel;

namespace {
qkr::FluxState state_3_3() {
  return qkr::make_flux_state(DampingModel::Ohmic(3.0), 3.0);
}
}  // namespace

TEST_CASE("flux state construction and guards") {
  const auto st = state_3_3();
  CHECK(st.lambda < 0.0);
  CHECK(st.omega_r > 0.0);
  CHECK(st.omega_r <= 1.0);
  CHECK_FALSE(st.omega.has_value());  // strict Ohmic: no momentum variance

  // Temperature guard against the critical point; the guard margin is
  // configurable.
  CHECK_THROWS_AS(qkr::make_flux_state(DampingModel::Ohmic(3.0), 5.0), qkr::RegimeError);
  CHECK_THROWS_AS(qkr::make_flux_state(DampingModel::Ohmic(3.0), 4.9,
                                       qkr::NormMode::relative, 10000, 0.05),
                  qkr::RegimeError);
  CHECK_NOTHROW(qkr::make_flux_state(DampingModel::Ohmic(3.0), 4.9,
                                     qkr::NormMode::relative, 10000, 0.01));
  // Absolute normalization needs a convergent fluctuation product.
  CHECK_THROWS_AS(
      qkr::make_flux_state(DampingModel::Ohmic(3.0), 3.0, qkr::NormMode::drude_absolute),
      qkr::UnsupportedError);
  CHECK_NOTHROW(
      qkr::make_flux_state(DampingModel::Drude(3.0, 50.0), 3.0, qkr::NormMode::drude_absolute));
}

TEST_CASE("equilibrium density matrix values") {
  const auto st = qkr::make_flux_state(DampingModel::Ohmic(0.0), 1.0);
  CHECK(qkr::rho_theta(st, 0.0, 0.0).real() == doctest::Approx(1.0).epsilon(1e-14));
  // Diagonal growth away from the top with the inverted-oscillator weight.
  const double expect = std::exp(-1.0 / (4.0 * st.lambda));
  CHECK(qkr::rho_theta(st, 0.0, 1.0).real() == doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.31410).epsilon(1e-5));

  // Hermiticity: rho(-x, r) = conj(rho(x, r)).
  const cdouble a = qkr::rho_theta(st, -0.6, 0.8);
  const cdouble b = std::conj(qkr::rho_theta(st, 0.6, 0.8));
  CHECK(std::abs(a - b) < 1e-14);

  // Off-diagonal evaluation requires the momentum variance.
  const auto st3 = state_3_3();
  CHECK_NOTHROW(qkr::rho_theta(st3, 0.0, 1.0));
  CHECK_THROWS_AS(qkr::rho_theta(st3, 0.5, 1.0), qkr::UnsupportedError);
}

TEST_CASE("stationary form factor: values and reflection identity") {
  const auto st = state_3_3();
  CHECK(qkr::form_factor_stationary(st, 0.0, 0.0).real() ==
        doctest::Approx(0.5).epsilon(1e-14));

  // Diagonal closed form through the real error function.
  const double al = -st.lambda;
  for (double r = -10.0; r <= 10.0; r += 0.5) {
    const cdouble g = qkr::form_factor_stationary(st, 0.0, r);
    CHECK(std::abs(g.imag()) < 1e-15);
    CHECK(std::abs(g.real() - 0.5 * std::erfc(r / (2.0 * std::sqrt(al)))) < 1e-12);
  }

  // g(0, r) + g(0, -r) = 1.
  for (double r : {0.3, 1.0, 2.7, 6.0}) {
    const double s = qkr::form_factor_stationary(st, 0.0, r).real() +
                     qkr::form_factor_stationary(st, 0.0, -r).real();
    CHECK(std::abs(s - 1.0) < 1e-12);
  }

  // Monotone decreasing along the diagonal; full mass on the well side.
  CHECK(qkr::form_factor_stationary(st, 0.0, -8.0).real() ==
        doctest::Approx(1.0).epsilon(1e-9));
  double prev = 2.0;
  for (double r = -3.0; r <= 3.0; r += 0.25) {
    const double g = qkr::form_factor_stationary(st, 0.0, r).real();
    CHECK(g < prev);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    prev = g;
  }
}

TEST_CASE("time-dependent form factor approaches the stationary one") {
  const auto st = state_3_3();
  const double x_f = 1.0, r_f = 0.5;
  const cdouble stat = qkr::form_factor_stationary(st, x_f, r_f);
  double prev_gap = 1.0;
  for (double wt : {10.0, 15.0, 20.0}) {
    const double gap = std::abs(qkr::form_factor_t(st, x_f, r_f, wt / st.omega_r) - stat);
    CHECK(gap <= prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-8);

  // Limits of the half-space mass.
  CHECK(qkr::form_factor_t(st, 0.0, -40.0, 15.0 / st.omega_r).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qkr::form_factor_t(st, 0.0, 0.0, 15.0 / st.omega_r).real() ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Too-early evaluation is refused while the Gaussian width is undefined
  // (|S| has not yet outgrown |Lambda|; a wide, hot state makes that bind).
  const auto hot = qkr::make_flux_state(DampingModel::Ohmic(3.0), 0.1);
  CHECK_THROWS_AS(qkr::form_factor_t(hot, 0.0, 0.0, 1e-3), qkr::RegimeError);
}

TEST_CASE("stationary flux solution") {
  const auto st = state_3_3();
  // At the top the flux state is half the equilibrium weight.
  const cdouble top = qkr::rho_flux(st, 0.0, 0.0);
  CHECK(top.real() ==
        doctest::Approx(0.5 * qkr::rho_theta(st, 0.0, 0.0).real()).epsilon(1e-12));

  // Equilibrium recovered on the well side of the barrier.
  const double r_well = -8.0 * std::sqrt(-st.lambda);
  const cdouble ratio = qkr::rho_flux(st, 0.0, r_well) / qkr::rho_theta(st, 0.0, r_well);
  CHECK(ratio.real() == doctest::Approx(1.0).epsilon(1e-7));

  // Beyond the barrier the flux state decays even though the equilibrium
  // weight grows: scan the diagonal out to 6 sqrt(|Lambda|).
  const double al = -st.lambda;
  double prev = 1.0;
  for (double r = 0.5 * std::sqrt(al); r <= 6.0 * std::sqrt(al);
       r += 0.25 * std::sqrt(al)) {
    const cdouble v = qkr::rho_flux(st, 0.0, r);
    CHECK(std::abs(v.imag()) < 1e-12);
    CHECK(v.real() >= 0.0);
    CHECK(v.real() < prev);
    prev = v.real();
  }
  CHECK(prev < 0.12);
}

TEST_CASE("flux profile rows") {
  const auto st = state_3_3();
  std::vector<double> grid;
  for (double q = -4.0; q <= 4.0; q += 0.5) grid.push_back(q);
  const auto rows = qkr::flux_profile(st, grid);
  REQUIRE(rows.size() == grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].q == grid[i]);
    CHECK(rows[i].g_diag >= 0.0);
    CHECK(rows[i].g_diag <= 1.0);
    if (i > 0) CHECK(rows[i].g_diag < rows[i - 1].g_diag);
  }
  // Center value is exactly one half.
  const auto center = qkr::flux_profile(st, std::vector<double>{0.0});
  CHECK(center[0].g_diag == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("profile width shrinks with inverse temperature") {
  // 10%-90% width of the diagonal sigmoid, by bisection on the closed form.
  auto width = [](double theta) {
    const auto st = qkr::make_flux_state(DampingModel::Ohmic(3.0), theta);
    const double al = -st.lambda;
    auto q_at = [&](double target) {
      double lo = -30.0, hi = 30.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (0.5 * std::erfc(mid / (2.0 * std::sqrt(al))) > target)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    };
    return q_at(0.1) - q_at(0.9);
  };
  const double w1 = width(0.1), w2 = width(0.5), w3 = width(3.0);
  CHECK(w1 > w2);
  CHECK(w2 > w3);
}

TEST_CASE("drude-absolute normalization carries the fluctuation prefactor") {
  const auto m = DampingModel::Drude(2.0, 30.0);
  const auto rel = qkr::make_flux_state(m, 2.0, qkr::NormMode::relative);
  const auto abs_ = qkr::make_flux_state(m, 2.0, qkr::NormMode::drude_absolute);
  CHECK(rel.prefactor == 1.0);
  CHECK(abs_.prefactor > 0.0);
  const double ratio =
      qkr::rho_theta(abs_, 0.0, 0.7).real() / qkr::rho_theta(rel, 0.0, 0.7).real();
  CHECK(ratio == doctest::Approx(abs_.prefactor).epsilon(1e-12));
}
