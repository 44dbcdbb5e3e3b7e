#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qkramers/errors.hpp"

namespace qkr::numerics {

// Gauss-Kronrod 7-15 panel. Rows: node, Gauss weight, Kronrod weight.
// First four rows are the Gauss nodes, the remainder Kronrod-only nodes.
inline constexpr double kGK15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class T>
struct PanelResult {
  T value;
  double error;
};

template <class Func>
auto gk15_panel(const Func& f, double a, double b) {
  using T = decltype(f(a));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T y0 = f(mid);
  T g = kGK15[0][1] * y0;
  T k = kGK15[0][2] * y0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kGK15[i][0];
    T yi = f(mid + dx) + f(mid - dx);
    g += kGK15[i][1] * yi;
    k += kGK15[i][2] * yi;
  }
  g *= half;
  k *= half;

  double err = 200.0 * std::abs(g - k);
  err = err * std::sqrt(err);
  return PanelResult<T>{k, err};
}

struct QuadResult {
  double value;
  double error;
};

// Adaptive bisection on the worst panel until the summed error estimate
// drops below max(abs_tol, rel_tol * |integral|).
template <class Func>
auto integrate(const Func& f, double a, double b, double rel_tol = 1e-9,
               double abs_tol = 1e-14, std::size_t max_panels = 2000) {
  using T = decltype(f(a));
  struct Panel {
    double a, b, error;
    T value;
  };

  auto first = gk15_panel(f, a, b);
  std::vector<Panel> panels{{a, b, first.error, first.value}};

  for (;;) {
    T total{};
    double err_total = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err_total += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    const double goal = std::max(abs_tol, rel_tol * std::abs(total));
    if (err_total <= goal) return total;
    if (panels.size() >= max_panels) {
      throw NumericalError("adaptive quadrature did not converge: error estimate " +
                           std::to_string(err_total) + " above tolerance " +
                           std::to_string(goal));
    }
    Panel p = panels[worst];
    panels.erase(panels.begin() + static_cast<std::ptrdiff_t>(worst));
    const double m = 0.5 * (p.a + p.b);
    auto left = gk15_panel(f, p.a, m);
    auto right = gk15_panel(f, m, p.b);
    panels.push_back({p.a, m, left.error, left.value});
    panels.push_back({m, p.b, right.error, right.value});
  }
}

// Neumaier-compensated accumulator; keeps long series sums deterministic
// and immune to cancellation drift.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + comp; }
};

}  // namespace qkr::numerics
