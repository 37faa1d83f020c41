#include "lks/geodesics.hpp"

#include <algorithm>
#include <cmath>

#include "rk45.hpp"

namespace lks {

GeodesicDerivative geodesic_rhs(const GeodesicState& s,
                                const FunctionProfile& prof) {
  double fp = prof.fp(s.x);
  double f = prof.f(s.x);
  GeodesicDerivative d;
  d.dx = s.p;
  d.dy = s.q;
  d.dp = -fp * s.q * (s.p + 0.5 * f * s.q);
  d.dq = 0.5 * fp * s.q * s.q;
  return d;
}

Trajectory integrate(const GeodesicState& start, const FunctionProfile& prof,
                     double t_end, const IntegrateOptions& opt) {
  Trajectory traj;
  traj.C0 = start.clairaut(prof);
  traj.E0 = start.energy(prof);
  traj.samples.push_back(start);

  const Domain& dom = prof.domain();
  auto rhs = [&](double, detail::State<4> y) -> detail::State<4> {
    GeodesicState s{y[0], y[1], y[2], y[3], 0};
    GeodesicDerivative d = geodesic_rhs(s, prof);
    return {d.dx, d.dy, d.dp, d.dq};
  };

  bool finished = detail::integrate_rk45<4>(
      rhs, start.t, {start.x, start.y, start.p, start.q}, t_end, opt.rtol,
      opt.atol, [&](const detail::StepRecord<4>& r) {
        GeodesicState s{r.y1[0], r.y1[1], r.y1[2], r.y1[3], r.t1};
        traj.samples.push_back(s);
        traj.drift_C =
            std::max(traj.drift_C, std::abs(s.clairaut(prof) - traj.C0));
        traj.drift_E =
            std::max(traj.drift_E, std::abs(s.energy(prof) - traj.E0));
        if (std::abs(s.p) + std::abs(s.q) > opt.blowup_speed) {
          traj.blew_up = true;
          traj.blowup_time = s.t;
          return false;
        }
        if (!dom.is_periodic() && (s.x <= dom.a || s.x >= dom.b)) {
          traj.left_domain = true;
          return false;
        }
        return static_cast<int>(traj.samples.size()) < opt.max_samples;
      });
  if (!finished && !traj.blew_up && !traj.left_domain) {
    // step size underflow: the solution leaves every compact set
    traj.blew_up = true;
    traj.blowup_time = traj.samples.back().t;
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Disconnection of {eps f < C^2}.

std::optional<Disconnection> disconnection_test(const FunctionProfile& prof,
                                                int eps, double C) {
  if (C == 0) throw ValidationError("disconnection test needs C != 0");
  if (eps != 1 && eps != -1) throw ValidationError("eps must be +-1");

  double lo = prof.scan_lo(), hi = prof.scan_hi();
  if (prof.domain().is_periodic()) hi = lo + 2 * prof.domain().period;
  const int n = 4 * prof.grid_n();

  for (int attempt = 0; attempt < 6; ++attempt) {
    double Cn = C + attempt * 1e-6 * std::max(1.0, std::abs(C));
    double level = eps * Cn * Cn;
    auto rad = [&](double x) { return Cn * Cn - eps * prof.f(x); };  // > 0 inside

    // roots of eps f = level on the scan grid
    std::vector<double> roots;
    double prev_x = lo, prev_v = rad(lo);
    bool degenerate_root = false;
    for (int i = 1; i <= n; ++i) {
      double x = lo + i * (hi - lo) / n;
      double v = rad(x);
      if ((prev_v < 0) != (v < 0)) {
        double a = prev_x, b = x, fa = prev_v;
        for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
          double m = 0.5 * (a + b), fm = rad(m);
          if ((fa < 0) != (fm < 0))
            b = m;
          else {
            a = m;
            fa = fm;
          }
        }
        double r = 0.5 * (a + b);
        roots.push_back(r);
        if (std::abs(prof.fp(r)) <= 1e-6) degenerate_root = true;
      }
      prev_x = x;
      prev_v = v;
    }
    if (degenerate_root) continue;  // nudge C and retry

    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      double mid = 0.5 * (roots[i] + roots[i + 1]);
      if (rad(mid) > 0) {
        (void)level;
        return Disconnection{roots[i], roots[i + 1], Cn};
      }
    }
    return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quadrature of the traversal time.

namespace {

// 16-point Gauss-Legendre rule on [-1, 1]
const double kGlX[8] = {0.0950125098376374, 0.2816035507792589,
                        0.4580167776572274, 0.6178762444026438,
                        0.7554044083550030, 0.8656312023878318,
                        0.9445750230732326, 0.9894009349916499};
const double kGlW[8] = {0.1894506104550685, 0.1826034150449236,
                        0.1691565193950025, 0.1495959888165767,
                        0.1246289712555339, 0.0951585116824928,
                        0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss16(F f, double a, double b) {
  double c = 0.5 * (a + b), r = 0.5 * (b - a);
  double acc = 0;
  for (int i = 0; i < 8; ++i)
    acc += kGlW[i] * (f(c - r * kGlX[i]) + f(c + r * kGlX[i]));
  return acc * r;
}

template <class F>
double adaptive_panels(F f, double a, double b) {
  int panels = 8;
  double prev = 0;
  for (int round = 0;; ++round) {
    double acc = 0;
    for (int i = 0; i < panels; ++i)
      acc += gauss16(f, a + i * (b - a) / panels, a + (i + 1) * (b - a) / panels);
    if (round > 0 && std::abs(acc - prev) <= 1e-11 * std::max(1.0, std::abs(acc)))
      return acc;
    if (panels >= 1024) return acc;
    prev = acc;
    panels *= 2;
  }
}

}  // namespace

double tangency_time_quadrature(const FunctionProfile& prof, int eps, double C,
                                double a, double b) {
  double m = 0.5 * (a + b);
  auto rad = [&](double x) { return C * C - eps * prof.f(x); };

  // left half with x = a + u^2; S(u) = rad(a + u^2) / u^2 stays smooth
  auto left = [&](double u) {
    double S;
    if (std::abs(u) < 1e-7) {
      S = -eps * prof.fp(a);
    } else {
      S = rad(a + u * u) / (u * u);
    }
    return 2.0 / std::sqrt(S);
  };
  auto right = [&](double w) {
    double S;
    if (std::abs(w) < 1e-7) {
      S = eps * prof.fp(b);
    } else {
      S = rad(b - w * w) / (w * w);
    }
    return 2.0 / std::sqrt(S);
  };
  double tl = adaptive_panels(left, 0.0, std::sqrt(m - a));
  double tr = adaptive_panels(right, 0.0, std::sqrt(b - m));
  return tl + tr;
}

// ---------------------------------------------------------------------------
// Conjugate point search.

ConjugateReport conjugate_search(const FunctionProfile& prof, int eps, double C) {
  ConjugateReport rep;
  rep.eps = eps;
  rep.C = C;
  auto disc = disconnection_test(prof, eps, C);
  if (!disc) {
    rep.status = ConjugateReport::Status::NotFound;
    rep.note = "no relatively compact component of {eps f < C^2}";
    return rep;
  }
  rep.a = disc->a;
  rep.b = disc->b;
  rep.C = disc->C;

  rep.t_quadrature =
      tangency_time_quadrature(prof, eps, disc->C, disc->a, disc->b);
  if (!std::isfinite(rep.t_quadrature) || rep.t_quadrature <= 0) {
    rep.status = ConjugateReport::Status::Inconclusive;
    rep.note = "quadrature of the traversal time failed";
    return rep;
  }

  GeodesicState start;
  start.x = disc->a;
  start.y = 0;
  start.p = 0;
  start.q = eps / disc->C;

  IntegrateOptions opt;
  double t_cap = 2.5 * rep.t_quadrature;

  // collect the trajectory and locate the sign change of p
  std::vector<detail::StepRecord<4>> steps;
  auto rhs = [&](double, detail::State<4> y) -> detail::State<4> {
    GeodesicState s{y[0], y[1], y[2], y[3], 0};
    GeodesicDerivative d = geodesic_rhs(s, prof);
    return {d.dx, d.dy, d.dp, d.dq};
  };
  Trajectory traj;
  traj.C0 = start.clairaut(prof);
  traj.E0 = start.energy(prof);
  traj.samples.push_back(start);
  bool escaped = false;
  detail::integrate_rk45<4>(rhs, 0.0, {start.x, start.y, start.p, start.q},
                            t_cap, opt.rtol, opt.atol,
                            [&](const detail::StepRecord<4>& r) {
                              steps.push_back(r);
                              GeodesicState s{r.y1[0], r.y1[1], r.y1[2],
                                              r.y1[3], r.t1};
                              traj.samples.push_back(s);
                              traj.drift_C = std::max(
                                  traj.drift_C,
                                  std::abs(s.clairaut(prof) - traj.C0));
                              traj.drift_E = std::max(
                                  traj.drift_E,
                                  std::abs(s.energy(prof) - traj.E0));
                              if (std::abs(s.p) + std::abs(s.q) > opt.blowup_speed) {
                                escaped = true;
                                return false;
                              }
                              return true;
                            });
  rep.trajectory = traj;
  if (escaped) {
    rep.status = ConjugateReport::Status::Inconclusive;
    rep.note = "integration escaped before the second tangency";
    return rep;
  }

  // arm once p has clearly left the launch tangency
  double arm = 1e-3 * std::abs(1.0 / disc->C);
  bool armed = false;
  const detail::StepRecord<4>* hit = nullptr;
  for (const auto& r : steps) {
    if (!armed && r.y1[2] > arm) armed = true;
    if (armed && r.y1[2] <= 0.0) {
      hit = &r;
      break;
    }
  }
  if (!hit) {
    rep.status = ConjugateReport::Status::Inconclusive;
    rep.note = "tangency not bracketed before the time cap";
    return rep;
  }

  // bisection on the Hermite interpolant of p
  double ta = hit->t0, tb = hit->t1;
  for (int it = 0; it < 200 && tb - ta > 1e-15 * std::max(1.0, tb); ++it) {
    double tm = 0.5 * (ta + tb);
    double pm = detail::hermite_eval(*hit, tm)[2];
    if (pm > 0)
      ta = tm;
    else
      tb = tm;
  }
  double t_star = 0.5 * (ta + tb);
  auto s_star = detail::hermite_eval(*hit, t_star);
  rep.t_tangency = t_star;
  rep.tangency_p = std::abs(s_star[2]);
  rep.tangency_x_error = std::abs(s_star[0] - disc->b);

  double span = prof.scan_hi() - prof.scan_lo();
  if (rep.tangency_x_error > 1e-5 * std::max(1.0, span)) {
    rep.status = ConjugateReport::Status::Inconclusive;
    rep.note = "tangency found away from the far boundary";
    return rep;
  }
  double rel = std::abs(rep.t_tangency - rep.t_quadrature) / rep.t_quadrature;
  if (rel > 1e-4) {
    rep.status = ConjugateReport::Status::Inconclusive;
    rep.note = "arrival time disagrees with the quadrature";
    return rep;
  }
  rep.status = ConjugateReport::Status::Found;
  return rep;
}

// ---------------------------------------------------------------------------
// Conditions for conjugate-point-free marked tori.

CpConditions cp_conditions(const FunctionProfile& prof,
                           const std::vector<double>& marks) {
  CpConditions out;
  if (!prof.domain().is_periodic())
    throw ValidationError("cp conditions need a periodic profile");
  double T = prof.domain().period;

  ComponentSet cs;
  try {
    cs = components(prof);
  } catch (const NotFiniteTypeError&) {
    out.failures.push_back("components of {f != 0} are not locally finite");
    out.holds = false;
    return out;
  }
  if (marks.size() % 2 != 0)
    out.failures.push_back("marking must have even cardinality");

  auto wrapped = [&](double x) {
    double y = std::fmod(x, T);
    if (y < 0) y += T;
    return y;
  };

  // (2) every component carries a mark
  for (std::size_t i = 0; i < cs.comps.size(); ++i) {
    const Component& c = cs.comps[i];
    bool marked = false;
    for (double m : marks) {
      double mm = wrapped(m);
      if (mm > c.lo && mm < c.hi) marked = true;
      if (cs.cyclic && mm + T > c.lo && mm + T < c.hi) marked = true;
    }
    if (!marked)
      out.failures.push_back("component " + std::to_string(i) +
                             " carries no mark");
  }

  // (3) consecutive components have opposite signs
  int nc = static_cast<int>(cs.comps.size());
  for (int i = 0; i < nc; ++i) {
    int j = (i + 1) % nc;
    if (!cs.cyclic && j == 0) break;
    if (cs.comps[i].sign == cs.comps[j].sign) {
      out.failures.push_back("components " + std::to_string(i) + " and " +
                             std::to_string(j) + " have equal signs");
    }
  }

  // (4) f' changes sign exactly once per component
  for (int i = 0; i < nc; ++i) {
    const Component& c = cs.comps[i];
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) continue;
    double w = c.width();
    int changes = 0;
    double prev = prof.fp(c.lo + 1e-4 * w);
    for (int s = 1; s <= 256; ++s) {
      double x = c.lo + (1e-4 + (1 - 2e-4) * s / 256.0) * w;
      double cur = prof.fp(x);
      if ((prev < 0) != (cur < 0)) ++changes;
      prev = cur;
    }
    if (changes != 1)
      out.failures.push_back("f' changes sign " + std::to_string(changes) +
                             " times on component " + std::to_string(i));
  }

  out.holds = out.failures.empty();
  return out;
}

}  // namespace lks
