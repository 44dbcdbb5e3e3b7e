#include "qkramers/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qkramers/detail/charpoly.hpp"
#include "qkramers/numerics/quadrature.hpp"
#include "qkramers/numerics/special.hpp"

namespace qkr {

namespace {

double near_caustic_guard(double lambda) {
  if (std::abs(lambda) < 1e-6)
    throw PoleError("imaginary-time path near caustic: |Lambda| < 1e-6");
  return lambda;
}
}  // namespace

double grote_hynes(const DampingModel& m) { return detail::grote_hynes_root(m); }

PoleDecomposition decompose_gplus(const DampingModel& m) {
  PoleDecomposition d;
  d.model = m;
  d.poles = detail::shifted_char_roots(m, -1.0);

  // Polish the positive real pole with the dedicated bracketed solver.
  const double wr = detail::grote_hynes_root(m);
  std::size_t gh = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < d.poles.size(); ++i) {
    const double dist = std::abs(d.poles[i] - wr);
    if (dist < best) {
      best = dist;
      gh = i;
    }
  }
  d.poles[gh] = wr;
  d.gh_index = gh;

  for (std::size_t i = 0; i < d.poles.size(); ++i)
    for (std::size_t j = i + 1; j < d.poles.size(); ++j)
      if (std::abs(d.poles[i] - d.poles[j]) < 1e-8)
        throw PoleError("decompose_gplus: repeated propagator pole; perturb parameters");

  // Residue of G+_hat at z_i: 1/(2 z + gamma_hat + z gamma_hat').
  d.residues.resize(d.poles.size());
  if (m.is_drude()) {
    // Equivalent cleared form (omega_d + z)/C'(z) avoids evaluating
    // gamma_hat at complex poles near its own pole.
    for (std::size_t i = 0; i < d.poles.size(); ++i) {
      const cdouble z = d.poles[i];
      cdouble cp = 1.0;
      for (std::size_t j = 0; j < d.poles.size(); ++j)
        if (j != i) cp *= (z - d.poles[j]);
      d.residues[i] = (m.omega_d + z) / cp;
    }
  } else {
    for (std::size_t i = 0; i < d.poles.size(); ++i)
      d.residues[i] = 1.0 / (2.0 * d.poles[i] + m.gamma);
  }

  cdouble sum0 = 0.0, sum1 = 0.0;
  for (std::size_t i = 0; i < d.poles.size(); ++i) {
    sum0 += d.residues[i];
    sum1 += d.residues[i] * d.poles[i];
  }
  if (std::abs(sum0) > 1e-12 || std::abs(sum1 - 1.0) > 1e-12)
    throw NumericalError("decompose_gplus: residue sum rules violated");
  return d;
}

double gplus(const PoleDecomposition& d, double t, int order) {
  if (order < 0 || order > 3) throw DomainError("gplus: order must be 0..3");
  if (t < 0.0) {
    if (order == 0) return 0.0;
    throw DomainError("gplus: derivatives undefined for t < 0");
  }
  // Poles are real or come in conjugate pairs, so the imaginary parts cancel
  // exactly; summing real parts term by term enforces that cancellation.
  double acc = 0.0;
  for (std::size_t i = 0; i < d.poles.size(); ++i) {
    cdouble term = d.residues[i] * std::exp(d.poles[i] * t);
    for (int k = 0; k < order; ++k) term *= d.poles[i];
    acc += term.real();
  }
  return acc;
}

double a_of_t(const PoleDecomposition& d, double t) {
  if (t < 0.0) return 0.0;
  return -0.5 * gplus(d, t, 0);
}

double a_asymptotic(const PoleDecomposition& d, double t) {
  return -0.5 * d.residue_gh() * std::exp(d.omega_r() * t);
}

BarrierDynamics make_barrier_dynamics(const DampingModel& m, double theta, long n_max) {
  BarrierDynamics dyn;
  dyn.decomposition = decompose_gplus(m);
  dyn.table = build_table(m, theta, n_max);
  dyn.lambda = lambda_cap(dyn.table).value;

  if (m.is_drude() && m.gamma > 0.0) {
    // Split every Fourier coefficient into its exp(-omega_d s) and
    // exp(-nu_n s) pieces so the back-action sums become short exponential
    // series with coefficients fixed at construction.
    auto cache = std::make_shared<detail_dyn::BackActionCache>();
    const MatsubaraTable& t = dyn.table;
    const double wd = m.omega_d;
    const double wd2 = wd * wd;
    const double pref = 2.0 * m.gamma * wd2 / theta;
    cache->c1_exp.assign(t.n_max + 1, 0.0);
    cache->c2_exp.assign(t.n_max + 1, 0.0);

    numerics::Kahan c1_wd, c2_wd;
    c1_wd.add(-m.gamma * wd / theta);  // n = 0 term, u_0 g_0 = -gamma(s)
    for (long n = 1; n <= t.n_max; ++n) {
      const double nu = t.nu[n];
      const double split = wd2 - nu * nu;
      if (std::abs(split) < 1e-4 * wd2)
        throw PoleError(
            "back-action cache: nu_n within 1e-4 of omega_d; perturb omega_d");
      const double base = t.u[n] / split;
      c1_wd.add(pref * wd * base);
      cache->c1_exp[n] = -pref * nu * base;
      c2_wd.add(-pref * nu * nu * base);
      cache->c2_exp[n] = pref * nu * nu * base;
    }
    cache->c1_wd = c1_wd.get();
    cache->c2_wd = c2_wd.get();

    const double kappa = t.kappa();
    const double n_eff = static_cast<double>(t.n_max);
    cache->tail1_scale =
        -pref * wd * numerics::zeta_tail(4.0, n_eff) / std::pow(kappa, 4);
    cache->tail2_scale = pref * numerics::zeta_tail(2.0, n_eff) / (kappa * kappa);
    dyn.back_action = std::move(cache);
  }
  return dyn;
}

CValues c_functions(const BarrierDynamics& dyn, double s) {
  if (s < 0.0) throw DomainError("c_functions: s must be >= 0");
  const DampingModel& m = dyn.model();
  if (!m.has_smooth_kernel())
    throw UnsupportedError("c_functions require a Drude cutoff for gamma > 0");
  if (m.gamma == 0.0) return {0.0, 0.0, 0.0};

  const auto& cache = *dyn.back_action;
  const MatsubaraTable& t = dyn.table;
  const double decay_wd = std::exp(-m.omega_d * s);
  const double step = std::exp(-t.kappa() * s);

  numerics::Kahan c1, c2;
  c1.add((cache.c1_wd + cache.tail1_scale) * decay_wd);
  c2.add((cache.c2_wd + cache.tail2_scale) * decay_wd);
  double en = 1.0;
  for (long n = 1; n <= t.n_max; ++n) {
    en *= step;
    if (en < 1e-300) break;
    c1.add(cache.c1_exp[n] * en);
    c2.add(cache.c2_exp[n] * en);
    // Coefficients fall off like 1/nu; once the exponential has decayed past
    // the target precision the rest of the series cannot contribute.
    if (en * std::abs(cache.c2_exp[n]) < 1e-18 * (1.0 + std::abs(c2.get())) &&
        en * std::abs(cache.c1_exp[n]) < 1e-18 * (1.0 + std::abs(c1.get())))
      break;
  }

  CValues r;
  r.c1 = c1.get();
  r.c2 = c2.get();
  const double kappa = t.kappa();
  const double n_eff = static_cast<double>(t.n_max);
  const double cut = std::exp(-t.nu[t.n_max] * s);
  r.tail_error = 2.0 * m.gamma * m.omega_d * m.omega_d / t.theta * cut *
                 (numerics::zeta_tail(3.0, n_eff) / std::pow(kappa, 3) +
                  numerics::zeta_tail(2.0, n_eff) / (kappa * kappa));
  return r;
}

namespace {

double convolve_c1_gplus(const BarrierDynamics& dyn, double t, int order) {
  if (dyn.model().gamma == 0.0) return 0.0;
  auto integrand = [&](double s) {
    return c_functions(dyn, s).c1 * gplus(dyn.decomposition, t - s, order);
  };
  return numerics::integrate(integrand, 0.0, t, dyn.c1_quadrature_tol,
                             dyn.c1_quadrature_tol);
}

}  // namespace

double s_of_t(const BarrierDynamics& dyn, double t) {
  if (!(t > 0.0)) throw DomainError("s_of_t: t must be > 0");
  return dyn.lambda * gplus(dyn.decomposition, t, 1) + convolve_c1_gplus(dyn, t, 0);
}

double s_dot(const BarrierDynamics& dyn, double t) {
  if (!(t > 0.0)) throw DomainError("s_dot: t must be > 0");
  return dyn.lambda * gplus(dyn.decomposition, t, 2) + convolve_c1_gplus(dyn, t, 1);
}

double s_ddot(const BarrierDynamics& dyn, double t) {
  if (!(t > 0.0)) throw DomainError("s_ddot: t must be > 0");
  return dyn.lambda * gplus(dyn.decomposition, t, 3) + c_functions(dyn, t).c1 +
         convolve_c1_gplus(dyn, t, 2);
}

double s_asymptotic(const BarrierDynamics& dyn, double t) {
  const double wr = dyn.decomposition.omega_r();
  const double arg = 0.5 * wr * dyn.theta();
  return -0.5 / std::tan(arg) * dyn.decomposition.residue_gh() * std::exp(wr * t);
}

double x_path(const PoleDecomposition& d, double t_total, double x_i, double x_f,
              double s) {
  if (!(s >= 0.0 && s <= t_total)) throw DomainError("x_path: s outside [0, t_total]");
  const double gt = gplus(d, t_total, 0);
  if (std::abs(gt) < 1e-14) throw PoleError("x_path: caustic, G+(t_total) = 0");
  const double g = gplus(d, t_total - s, 0);
  const double gd = gplus(d, t_total - s, 1);
  return x_i * g / gt + x_f * (gd - g * gplus(d, t_total, 1) / gt);
}

double r_path(const BarrierDynamics& dyn, double t_total, double r_i, double r_f,
              double rbar, double s) {
  if (!(s >= 0.0 && s <= t_total)) throw DomainError("r_path: s outside [0, t_total]");
  const PoleDecomposition& d = dyn.decomposition;
  const double gt = gplus(d, t_total, 0);
  if (std::abs(gt) < 1e-14) throw PoleError("r_path: caustic, G+(t_total) = 0");

  const double gs = gplus(d, s, 0);
  double r = r_f * gs / gt + r_i * (gplus(d, s, 1) - gs * gplus(d, t_total, 1) / gt);

  if (rbar != 0.0 && dyn.model().gamma != 0.0) {
    near_caustic_guard(dyn.lambda);
    auto force = [&](double u) { return rbar * c_functions(dyn, u).c1 / dyn.lambda; };
    auto conv = [&](double upper) {
      auto integrand = [&](double u) { return gplus(d, upper - u, 0) * force(u); };
      if (upper <= 0.0) return 0.0;
      return numerics::integrate(integrand, 0.0, upper, dyn.c1_quadrature_tol,
                                 dyn.c1_quadrature_tol);
    };
    r += conv(s) - gs / gt * conv(t_total);
  }
  return r;
}

cdouble imaginary_path(const BarrierDynamics& dyn, double xbar, double rbar,
                       std::span<const double> x_samples, double t_total,
                       double sigma) {
  const MatsubaraTable& tab = dyn.table;
  const double theta = tab.theta;
  if (!(sigma > 0.0 && sigma < theta))
    throw DomainError("imaginary_path: sigma outside (0, theta)");
  near_caustic_guard(dyn.lambda);
  const DampingModel& m = dyn.model();
  if (!m.has_smooth_kernel())
    throw UnsupportedError("imaginary_path requires a Drude cutoff for gamma > 0");

  if (!x_samples.empty() && x_samples.size() < 3)
    throw DomainError("imaginary_path: need at least 3 grid samples");
  const bool coupled = x_samples.size() >= 3 && t_total > 0.0;

  // Trapezoidal functionals of the sampled path with one Richardson step
  // (possible whenever the interval count is even).
  auto functional = [&](auto&& weight) -> double {
    if (!coupled) return 0.0;
    const std::size_t mpts = x_samples.size();
    const std::size_t last = mpts - 1;
    const double h = t_total / static_cast<double>(last);
    auto trapz = [&](std::size_t stride) {
      numerics::Kahan acc;
      for (std::size_t j = 0; j <= last; j += stride) {
        const double w = (j == 0 || j == last) ? 0.5 : 1.0;
        acc.add(w * weight(h * static_cast<double>(j)) * x_samples[j]);
      }
      return acc.get() * h * static_cast<double>(stride);
    };
    const double fine = trapz(1);
    if (last % 2 == 0) {
      const double coarse = trapz(2);
      return (4.0 * fine - coarse) / 3.0;
    }
    return fine;
  };

  const long n_modes = tab.n_max;
  std::vector<double> f_of_x(n_modes + 1, 0.0), g_of_x(n_modes + 1, 0.0);
  if (coupled && m.gamma != 0.0) {
    for (long n = 0; n <= n_modes; ++n) {
      auto gw = [&](double s) { return fourier_coeffs(m, n, theta, s).g; };
      auto fw = [&](double s) { return fourier_coeffs(m, n, theta, s).f; };
      g_of_x[n] = functional(gw);
      f_of_x[n] = functional(fw);
    }
  }

  // Full-line sum of u_n g_n[x] (g even in n) and the jump coefficient b.
  numerics::Kahan gsum;
  gsum.add(tab.u[0] * g_of_x[0]);
  for (long n = 1; n <= n_modes; ++n) gsum.add(2.0 * tab.u[n] * g_of_x[n]);
  const cdouble b =
      -(rbar - cdouble(0.0, 1.0) * gsum.get() / theta) / dyn.lambda;

  // Sawtooth part of the xbar jump and the 1/nu^2 piece of the cosine series
  // are resummed in closed form on (0, theta); every remaining mode sum
  // decays at least like 1/nu^3.
  const double sawtooth = xbar * (sigma / theta - 0.5);
  const double x = 2.0 * std::numbers::pi * sigma / theta;
  const double pi = std::numbers::pi;
  const double kappa = tab.kappa();
  const double cos_over_nu2 =
      (pi * pi / 6.0 - 0.5 * pi * x + 0.25 * x * x) / (kappa * kappa);

  numerics::Kahan re_acc, im_acc, b_cos;
  b_cos.add(tab.u[0] + 2.0 * cos_over_nu2);
  im_acc.add(tab.u[0] * g_of_x[0]);
  for (long n = 1; n <= n_modes; ++n) {
    const double nu = tab.nu[n];
    const double sn = std::sin(nu * sigma);
    const double cn = std::cos(nu * sigma);
    re_acc.add(2.0 * xbar * tab.u[n] * (tab.zeta[n] - 1.0) * sn / nu);
    re_acc.add(-2.0 * tab.u[n] * f_of_x[n] * sn);
    im_acc.add(2.0 * tab.u[n] * g_of_x[n] * cn);
    b_cos.add(2.0 * (tab.u[n] - 1.0 / (nu * nu)) * cn);
  }

  cdouble q(sawtooth + re_acc.get() / theta, im_acc.get() / theta);
  q -= b * (b_cos.get() / theta);
  return q;
}

}  // namespace qkr
