#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "friedlab/common.hpp"

namespace friedlab {

struct QuadResult {
  cplx value;
  double error;
  int panels;
};

namespace detail {
// 7-point Gauss / 15-point Kronrod on [-1,1]; nodes for x >= 0
inline constexpr std::array<double, 8> xk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
std::pair<cplx, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx fc = f(c);
  cplx rk = fc * wk[7], rg = fc * wg[3];
  for (int j = 0; j < 7; ++j) {
    cplx f1 = f(c - h * xk[j]), f2 = f(c + h * xk[j]);
    rk += wk[j] * (f1 + f2);
    if (j % 2 == 1) rg += wg[j / 2] * (f1 + f2);
  }
  return {rk * h, std::abs((rk - rg) * h)};
}
}  // namespace detail

// Adaptive bisection on the panel with the largest error estimate.
template <class F>
QuadResult integrate(F f, double a, double b, double abs_tol = tol::quad_abs,
                     int max_panels = 10000) {
  struct Panel {
    double a, b;
    cplx v;
    double e;
    bool operator<(const Panel& o) const { return e < o.e; }
  };
  if (a == b) return {0, 0, 0};
  std::priority_queue<Panel> q;
  auto [v0, e0] = detail::gk15(f, a, b);
  q.push({a, b, v0, e0});
  cplx total = v0;
  double err = e0;
  int panels = 1;
  while (err > abs_tol && panels < max_panels) {
    Panel p = q.top();
    q.pop();
    double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {  // cannot split further
      q.push(p);
      break;
    }
    auto [v1, e1] = detail::gk15(f, p.a, m);
    auto [v2, e2] = detail::gk15(f, m, p.b);
    total += v1 + v2 - p.v;
    err += e1 + e2 - p.e;
    q.push({p.a, m, v1, e1});
    q.push({m, p.b, v2, e2});
    ++panels;
  }
  // re-sum to shed accumulated drift in the running totals
  total = 0;
  err = 0;
  while (!q.empty()) {
    total += q.top().v;
    err += q.top().e;
    q.pop();
  }
  if (err > abs_tol)
    throw ConvergenceError("quadrature tolerance not met within panel budget", err);
  return {total, err, panels};
}

// Symmetric-limit integral over R: x = t/(1-t^2), pairing x and -x so an
// x^-1 tail cancels.
template <class F>
QuadResult integrate_real_line(F f, double abs_tol = tol::quad_abs, int max_panels = 10000) {
  auto g = [&](double t) {
    double d = 1 - t * t;
    double x = t / d;
    double jac = (1 + t * t) / (d * d);
    return (f(x) + f(-x)) * jac;
  };
  return integrate(g, 0.0, 1.0, abs_tol, max_panels);
}

}  // namespace friedlab
