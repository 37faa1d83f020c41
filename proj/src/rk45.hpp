#pragma once

// Adaptive Dormand-Prince 5(4) one-step integrator over fixed-size
// states.  Accepted steps are handed to a sink together with the
// derivative at both ends (enough for cubic Hermite dense output).

#include <array>
#include <cmath>
#include <functional>

namespace lks::detail {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
struct StepRecord {
  double t0, t1;
  State<N> y0, y1;
  State<N> f0, f1;
};

// Returns false when the step size underflows (stiff blow-up) before
// reaching t_end.  `accept` may return false to stop the integration
// early (event hit, escape, ...).
template <std::size_t N, class Rhs, class Accept>
bool integrate_rk45(Rhs rhs, double t0, State<N> y, double t_end, double rtol,
                    double atol, Accept accept) {
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1, 1};
  static const double B4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695,
                               393.0 / 640,    -92097.0 / 339200,
                               187.0 / 2100,   1.0 / 40};

  const double dir = t_end >= t0 ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(1e-3, std::abs(t_end - t0));
  State<N> k[7];
  k[0] = rhs(t, y);
  const double h_min = 1e-14 * std::max(1.0, std::abs(t_end - t0));

  while (dir * (t_end - t) > 0) {
    if (dir * (t + h) > dir * t_end) h = t_end - t;
    State<N> ytmp;
    for (int s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = 0;
        for (int j = 0; j < s; ++j) acc += A[s][j] * k[j][i];
        ytmp[i] = y[i] + h * acc;
      }
      k[s] = rhs(t + C[s] * h, ytmp);
    }
    // stage 6 weights are the 5th-order solution; ytmp now holds y5
    State<N> y5 = ytmp;
    double err = 0;
    for (std::size_t i = 0; i < N; ++i) {
      double acc4 = 0;
      for (int j = 0; j < 7; ++j) acc4 += B4[j] * k[j][i];
      double y4 = y[i] + h * acc4;
      double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      double e = (y5[i] - y4) / sc;
      err += e * e;
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) err = 1e6;

    if (err <= 1.0) {
      StepRecord<N> rec{t, t + h, y, y5, k[0], k[6]};
      t += h;
      y = y5;
      k[0] = k[6];  // first-same-as-last
      if (!accept(rec)) return true;
    }
    double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
    if (std::abs(h) < h_min) return false;
  }
  return true;
}

// Cubic Hermite evaluation inside an accepted step.
template <std::size_t N>
State<N> hermite_eval(const StepRecord<N>& r, double t) {
  double h = r.t1 - r.t0;
  double s = (t - r.t0) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  State<N> out;
  for (std::size_t i = 0; i < N; ++i)
    out[i] = h00 * r.y0[i] + h10 * h * r.f0[i] + h01 * r.y1[i] + h11 * h * r.f1[i];
  return out;
}

}  // namespace lks::detail
