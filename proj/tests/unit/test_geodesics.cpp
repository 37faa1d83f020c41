#include <doctest.h>

#include <cmath>
#include <random>

#include "lks/geodesics.hpp"

using namespace lks;

namespace {

FunctionProfile sine_profile() {
  return FunctionProfile(parse("sin(2*x)"), Domain::periodic(M_PI));
}

// cubic Hermite interpolation of x(t) over trajectory samples (x' = p is
// stored alongside x)
double interp_x(const Trajectory& traj, double t) {
  const auto& s = traj.samples;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    double t0 = s[i].t, t1 = s[i + 1].t;
    if ((t - t0) * (t - t1) <= 0) {
      double h = t1 - t0, u = (t - t0) / h;
      double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
      double h10 = u * (1 - u) * (1 - u);
      double h01 = u * u * (3 - 2 * u);
      double h11 = u * u * (u - 1);
      return h00 * s[i].x + h10 * h * s[i].p + h01 * s[i + 1].x +
             h11 * h * s[i + 1].p;
    }
  }
  return s.back().x;
}

}  // namespace

TEST_CASE("geodesic right-hand side") {
  FunctionProfile p = sine_profile();
  GeodesicState s;
  s.x = 0.4;
  s.q = 0.0;
  s.p = 0.7;
  GeodesicDerivative d = geodesic_rhs(s, p);
  CHECK(d.dp == 0.0);  // flow-orthogonal null direction stays straight
  CHECK(d.dq == 0.0);

  FunctionProfile flat(parse("3"), Domain::interval(-10, 10));
  s.q = 0.8;
  GeodesicDerivative df = geodesic_rhs(s, flat);
  CHECK(df.dp == 0.0);
  CHECK(df.dq == 0.0);
}

TEST_CASE("the Clairaut constant is a first integral of the equations") {
  FunctionProfile p = sine_profile();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    GeodesicState s;
    s.x = u(rng);
    s.y = u(rng);
    s.p = u(rng);
    s.q = u(rng);
    GeodesicDerivative d = geodesic_rhs(s, p);
    // d/dt (f q + p) = f' x' q + f q' + p'
    double dC = p.fp(s.x) * s.p * s.q + p.f(s.x) * d.dq + d.dp;
    CHECK(std::abs(dC) <= 1e-14 * std::max(1.0, std::abs(s.p) + std::abs(s.q)));
  }
}

TEST_CASE("conservation along integrated geodesics") {
  FunctionProfile p = sine_profile();
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.0, M_PI), uv(-1.0, 1.0);
  int completed = 0;
  for (int i = 0; i < 40 && completed < 10; ++i) {
    GeodesicState s;
    s.x = ux(rng);
    s.y = 0;
    s.p = uv(rng);
    s.q = uv(rng);
    Trajectory t = integrate(s, p, 10.0);
    if (t.blew_up || t.left_domain) continue;
    ++completed;
    CHECK(t.drift_C <= 1e-9);
    CHECK(t.drift_E <= 1e-9);
    // pointwise reduced-equation consistency
    for (const GeodesicState& q : t.samples) {
      double lhs = q.p * q.p;
      double rhs = t.C0 * t.C0 - t.E0 * p.f(q.x);
      CHECK(std::abs(lhs - rhs) <= 1e-8);
    }
  }
  CHECK(completed == 10);
}

TEST_CASE("flat profile integrates exactly to straight lines") {
  FunctionProfile flat(parse("0*x"), Domain::interval(-100, 100));
  GeodesicState s;
  s.x = 1.0;
  s.y = -2.0;
  s.p = 0.25;
  s.q = 0.5;
  Trajectory t = integrate(s, flat, 8.0);
  REQUIRE_FALSE(t.blew_up);
  const GeodesicState& e = t.samples.back();
  CHECK(e.x == doctest::Approx(1.0 + 0.25 * 8.0).epsilon(1e-12));
  CHECK(e.y == doctest::Approx(-2.0 + 0.5 * 8.0).epsilon(1e-12));
}

TEST_CASE("light leaves blow up on the side selected by lambda") {
  FunctionProfile p = sine_profile();
  // leaf x = 0 has lambda = 2 > 0: the y > 0 run is incomplete
  GeodesicState up;
  up.x = 0;
  up.p = 0;
  up.q = 1;
  Trajectory tu = integrate(up, p, 10.0);
  CHECK(tu.blew_up);
  // q' = lambda q^2 / 2 blows up at t = 2/(lambda q0)
  CHECK(tu.blowup_time == doctest::Approx(1.0).epsilon(1e-6));

  GeodesicState down = up;
  down.q = -1;
  Trajectory td = integrate(down, p, 1000.0);
  CHECK_FALSE(td.blew_up);
  CHECK(td.samples.back().t == doctest::Approx(1000.0));
}

TEST_CASE("disconnection of the sublevel set") {
  FunctionProfile lifted(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  auto d = disconnection_test(lifted, 1, 1.0);
  REQUIRE(d.has_value());
  // the component is where sin(2x) < -0.2
  CHECK(lifted.f(d->a) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(lifted.f(d->b) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(lifted.f(0.5 * (d->a + d->b)) < 1.0);

  FunctionProfile ones(parse("1 + 0*x"), Domain::interval(-50, 50));
  CHECK_FALSE(disconnection_test(ones, 1, 2.0).has_value());

  auto ds = disconnection_test(sine_profile(), 1, 0.5);
  CHECK(ds.has_value());

  CHECK_THROWS_AS(disconnection_test(lifted, 1, 0.0), ValidationError);
}

TEST_CASE("conjugate search on the anchored example") {
  FunctionProfile lifted(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  ConjugateReport rep = conjugate_search(lifted, 1, 1.0);
  REQUIRE(rep.status == ConjugateReport::Status::Found);
  CHECK(rep.tangency_p <= 1e-10);
  double rel = std::abs(rep.t_tangency - rep.t_quadrature) / rep.t_quadrature;
  CHECK(rel <= 1e-5);

  FunctionProfile ones(parse("1 + 0*x"), Domain::interval(-50, 50));
  CHECK(conjugate_search(ones, 1, 2.0).status ==
        ConjugateReport::Status::NotFound);
}

TEST_CASE("the doubly tangent geodesic is symmetric about the tangency") {
  FunctionProfile lifted(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  ConjugateReport rep = conjugate_search(lifted, 1, 1.0);
  REQUIRE(rep.status == ConjugateReport::Status::Found);

  // restart at the tangency and integrate both ways
  GeodesicState mid;
  mid.x = rep.b;
  mid.y = 0;
  mid.p = 0;
  mid.q = rep.eps / rep.C;
  Trajectory fwd = integrate(mid, lifted, rep.t_tangency);
  Trajectory bwd = integrate(mid, lifted, -rep.t_tangency);
  REQUIRE_FALSE(fwd.blew_up);
  REQUIRE_FALSE(bwd.blew_up);
  for (int i = 1; i < 40; ++i) {
    double s = rep.t_tangency * i / 40.0;
    CHECK(std::abs(interp_x(fwd, s) - interp_x(bwd, -s)) <= 1e-6);
  }
}

TEST_CASE("necessary conditions for conjugate-point-free marked tori") {
  FunctionProfile p = sine_profile();
  CpConditions ok = cp_conditions(p, {M_PI / 4, 3 * M_PI / 4});
  CHECK(ok.holds);
  CHECK(ok.failures.empty());

  CpConditions unmarked = cp_conditions(p, {});
  CHECK_FALSE(unmarked.holds);
  bool has2 = false;
  for (auto& f : unmarked.failures)
    if (f.find("no mark") != std::string::npos) has2 = true;
  CHECK(has2);

  // consecutive components of equal sign across a degenerate zero
  FunctionProfile twopos(parse("sin(x)^2*(1.5 + sin(x))"),
                         Domain::periodic(2 * M_PI));
  CpConditions eq = cp_conditions(twopos, {M_PI / 2, 3 * M_PI / 2});
  CHECK_FALSE(eq.holds);
  bool has3 = false;
  for (auto& f : eq.failures)
    if (f.find("equal signs") != std::string::npos) has3 = true;
  CHECK(has3);
}
