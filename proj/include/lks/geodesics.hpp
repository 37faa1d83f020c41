#pragma once

// Numerical geodesic flow of 2dxdy + f(x)dy^2: first-integral
// monitoring, finite-time blow-up of light leaves, and detection of
// conjugate points through geodesics doubly tangent to the Killing
// direction.

#include <optional>
#include <string>
#include <vector>

#include "lks/profile.hpp"

namespace lks {

struct GeodesicState {
  double x = 0, y = 0;  // position
  double p = 0, q = 0;  // velocities x', y'
  double t = 0;

  // Conserved along geodesics: the Clairaut constant and the energy.
  double clairaut(const FunctionProfile& prof) const {
    return prof.f(x) * q + p;
  }
  double energy(const FunctionProfile& prof) const {
    return prof.f(x) * q * q + 2 * p * q;
  }
};

struct GeodesicDerivative {
  double dx, dy, dp, dq;
};

// x'' = -f'(x) q (p + f(x) q / 2),  y'' = f'(x) q^2 / 2.
GeodesicDerivative geodesic_rhs(const GeodesicState& s,
                                const FunctionProfile& prof);

struct Trajectory {
  std::vector<GeodesicState> samples;
  double drift_C = 0, drift_E = 0;  // max deviation of the two integrals
  bool blew_up = false;
  double blowup_time = 0;
  bool left_domain = false;
  double C0 = 0, E0 = 0;
};

struct IntegrateOptions {
  double rtol = 1e-12;
  double atol = 1e-13;
  double blowup_speed = 1e9;  // |p| + |q| beyond which we declare blow-up
  int max_samples = 2'000'000;
};

Trajectory integrate(const GeodesicState& start, const FunctionProfile& prof,
                     double t_end, const IntegrateOptions& opt = {});

// A relatively compact component (a, b) of {eps f < C^2} with regular
// boundary values, after nudging C away from critical values if needed.
struct Disconnection {
  double a = 0, b = 0;
  double C = 0;  // possibly nudged
};

std::optional<Disconnection> disconnection_test(const FunctionProfile& prof,
                                                int eps, double C);

struct ConjugateReport {
  enum class Status { Found, NotFound, Inconclusive } status =
      Status::NotFound;
  double a = 0, b = 0;
  double C = 0;
  int eps = 1;
  double t_tangency = 0;       // arrival time of the second tangency
  double t_quadrature = 0;     // independent time from the x-quadrature
  double tangency_p = 0;       // |x'| at the detected tangency
  double tangency_x_error = 0; // |x - b| at the detected tangency
  Trajectory trajectory;
  std::string note;
};

// Launches the geodesic tangent to the Killing direction at (a, 0) and
// looks for the second tangency at x = b; the arrival time is verified
// against the quadrature of dx / sqrt(C^2 - eps f).
ConjugateReport conjugate_search(const FunctionProfile& prof, int eps, double C);

// Time to traverse (a,b) obtained from p^2 = C^2 - eps f by quadrature
// with square-root substitutions at the simple turning points.
double tangency_time_quadrature(const FunctionProfile& prof, int eps, double C,
                                double a, double b);

struct CpConditions {
  bool holds = false;
  std::vector<std::string> failures;
};

// Necessary conditions for a marked periodic profile to yield tori
// without conjugate points: locally finite components, every component
// marked, alternating signs, one sign change of f' per component.
CpConditions cp_conditions(const FunctionProfile& prof,
                           const std::vector<double>& marks);

}  // namespace lks
