#include <doctest.h>

#include <cmath>
#include <random>

#include "lks/profile.hpp"

using namespace lks;

namespace {

FunctionProfile sine_profile() {
  return FunctionProfile(parse("sin(2*x)"), Domain::periodic(M_PI));
}

}  // namespace

TEST_CASE("profile config parsing") {
  FunctionProfile p = parse_profile_config(
      "# demo\nfunction = sin(2*x)\ndomain = periodic:pi\n");
  CHECK(p.domain().is_periodic());
  CHECK(p.domain().period == doctest::Approx(M_PI));

  FunctionProfile q = parse_profile_config(
      "function = x^3 - x\ndomain = interval:-inf,inf\ntol = 1e-10\ngrid_n = "
      "8192\n");
  CHECK_FALSE(q.domain().is_periodic());
  CHECK(q.tol() == 1e-10);
  CHECK(q.grid_n() == 8192);

  CHECK_THROWS_AS(parse_profile_config("function = x\n"), ValidationError);
  CHECK_THROWS_AS(parse_profile_config("domain = periodic:1\n"), ValidationError);
  CHECK_THROWS_AS(
      parse_profile_config("function = x\ndomain = periodic:-2\n"),
      ValidationError);
  // declared period must validate on the grid
  CHECK_THROWS_AS(
      parse_profile_config("function = sin(2*x)\ndomain = periodic:3.14\n"),
      ValidationError);
}

TEST_CASE("zero finding on the worked examples") {
  auto zs = find_zeros(sine_profile());
  REQUIRE(zs.size() == 2);
  CHECK(zs[0].x0 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(zs[0].simple());
  CHECK(zs[0].lambda == doctest::Approx(2.0));
  CHECK(zs[1].x0 == doctest::Approx(M_PI / 2));
  CHECK(zs[1].lambda == doctest::Approx(-2.0));

  FunctionProfile sq(parse("x^2"), Domain::interval(-1, 1));
  auto zq = find_zeros(sq);
  REQUIRE(zq.size() == 1);
  CHECK(zq[0].kind == Zero::Kind::Degenerate);
  CHECK(std::abs(zq[0].lambda) <= 1e-9);

  FunctionProfile none(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  CHECK(find_zeros(none).empty());

  FunctionProfile mixed(parse("x*(x - 1)^2"), Domain::interval(-1, 2));
  auto zm = find_zeros(mixed);
  REQUIRE(zm.size() == 2);
  CHECK(zm[0].simple());
  CHECK(zm[0].x0 == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(zm[1].kind == Zero::Kind::Degenerate);
  CHECK(zm[1].x0 == doctest::Approx(1.0));
}

TEST_CASE("every returned zero satisfies the residual bound") {
  for (const char* src : {"sin(2*x)", "sin(2*x)*(1.1 + cos(2*x))"}) {
    FunctionProfile p(parse(src), Domain::periodic(M_PI));
    for (const Zero& z : find_zeros(p)) CHECK(std::abs(p.f(z.x0)) <= p.tol());
  }
  FunctionProfile q(parse("x^2*(x - 1)"), Domain::interval(-1, 2));
  for (const Zero& z : find_zeros(q)) CHECK(std::abs(q.f(z.x0)) <= q.tol());
}

TEST_CASE("plateau and accumulation guards") {
  FunctionProfile zero(parse("0*x"), Domain::interval(-1, 1));
  CHECK_THROWS_AS(find_zeros(zero), ZeroPlateauError);
  // zeros of sin(1/x) accumulate at 0
  FunctionProfile acc(parse("sin(1/x)"), Domain::interval(0.0001, 1));
  CHECK_THROWS_AS(find_zeros(acc), NotFiniteTypeError);
}

TEST_CASE("components of the worked examples") {
  ComponentSet cs = components(sine_profile());
  REQUIRE(cs.comps.size() == 2);
  CHECK(cs.cyclic);
  CHECK(cs.comps[0].sign == 1);
  CHECK(cs.comps[1].sign == -1);
  CHECK(cs.comps[0].lo == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cs.comps[0].hi == doctest::Approx(M_PI / 2));

  FunctionProfile pos(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  ComponentSet cp = components(pos);
  CHECK(cp.elementary);
  REQUIRE(cp.comps.size() == 1);
  CHECK(cp.comps[0].sign == 1);

  FunctionProfile mixed(parse("x*(x - 1)^2"), Domain::interval(-1, 2));
  ComponentSet cm = components(mixed);
  REQUIRE(cm.comps.size() == 3);
  CHECK(cm.comps[0].sign == -1);
  CHECK(cm.comps[1].sign == 1);
  CHECK(cm.comps[2].sign == 1);
  CHECK(cm.comps[0].touches_lo_end);
  CHECK(cm.comps[2].touches_hi_end);
}

TEST_CASE("contiguity graphs") {
  ContiguityGraph g = contiguity_graph(sine_profile());
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.pi0_count == 1);
  for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) <= 2);

  FunctionProfile mixed(parse("x*(x - 1)^2"), Domain::interval(-1, 2));
  ContiguityGraph gm = contiguity_graph(mixed);
  CHECK(gm.vertex_count() == 3);
  CHECK(gm.edge_count() == 1);
  CHECK(gm.pi0_count == 2);

  FunctionProfile pos(parse("sin(2*x) + 1.2"), Domain::periodic(M_PI));
  ContiguityGraph gp = contiguity_graph(pos);
  CHECK(gp.vertex_count() == 1);
  CHECK(gp.edge_count() == 0);
  CHECK(gp.pi0_count == 1);
}

TEST_CASE("edge count equals the number of interior simple zeros") {
  for (const char* src :
       {"sin(2*x)", "sin(2*x)*(1.1 + cos(2*x))", "sin(2*x)^3"}) {
    FunctionProfile p(parse(src), Domain::periodic(M_PI));
    ContiguityGraph g = contiguity_graph(p);
    int simple = 0;
    for (const Zero& z : g.zeros)
      if (z.simple()) ++simple;
    CHECK(g.edge_count() == simple);
  }
}

TEST_CASE("symmetry detection across the case list") {
  SymmetryClass s = detect_symmetry(sine_profile());
  CHECK(s.case_ == SymCase::C3c);
  CHECK(s.subtype == SymSubtype::PairUnilateral);
  CHECK(s.label() == "(3c^+u)");
  REQUIRE(s.period.has_value());
  CHECK(*s.period == doctest::Approx(M_PI));
  REQUIRE(s.reflection_centers.size() == 2);
  CHECK(s.reflection_centers[0] == doctest::Approx(M_PI / 4));

  // declared period = two minimal periods: minimal one is still found
  FunctionProfile twop(parse("sin(2*x)"), Domain::periodic(2 * M_PI));
  SymmetryClass s2 = detect_symmetry(twop);
  CHECK(s2.case_ == SymCase::C3c);
  CHECK(*s2.period == doctest::Approx(M_PI));

  FunctionProfile shifted(parse("2 + sin(2*pi*x)"), Domain::periodic(1.0));
  SymmetryClass sB = detect_symmetry(shifted);
  CHECK(sB.case_ == SymCase::C3c);  // sine still has reflection centers

  // translation-only symmetry
  FunctionProfile noref(parse("sin(x) + 0.3*sin(2*x)"),
                        Domain::periodic(2 * M_PI));
  SymmetryClass sN = detect_symmetry(noref);
  CHECK(sN.case_ == SymCase::C2);
  CHECK(sN.subtype == SymSubtype::PairUnilateral);
  CHECK(sN.label() == "(2^+u)");

  FunctionProfile even(parse("x^2"), Domain::interval(-1, 1));
  CHECK(detect_symmetry(even).case_ == SymCase::C1a);

  FunctionProfile evenfix(parse("(x^2 - 1)^2"), Domain::interval(-2, 2));
  CHECK(detect_symmetry(evenfix).case_ == SymCase::C1b);

  FunctionProfile plain(parse("x*(x - 1)^2"), Domain::interval(-1, 2));
  CHECK(detect_symmetry(plain).case_ == SymCase::C0);

  // one reflection class through a degenerate zero, the other inside a
  // component
  FunctionProfile mid(parse("(1 - cos(x))*(1.5 + cos(x))"),
                      Domain::periodic(2 * M_PI));
  SymmetryClass sM = detect_symmetry(mid);
  CHECK(sM.case_ == SymCase::C3b);
  CHECK(sM.subtype == SymSubtype::Odd);
}

TEST_CASE("curvature is f''/2") {
  FunctionProfile p = sine_profile();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ux(0.0, M_PI);
  for (int i = 0; i < 50; ++i) {
    double x = ux(rng);
    CHECK(curvature(p, x) == doctest::Approx(-2.0 * p.f(x)).epsilon(1e-12));
  }
  FunctionProfile flat(parse("x"), Domain::interval(-2, 2));
  CHECK(curvature(flat, 0.7) == 0.0);
  FunctionProfile parab(parse("x^2"), Domain::interval(-1, 1));
  CHECK(curvature(parab, -0.3) == doctest::Approx(1.0));
}

TEST_CASE("curvature agrees with finite differences of f/2") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ux(0.2, 2.8);
  for (const char* src : {"sin(2*x)", "exp(-x)*sin(3*x)", "x^3 - x"}) {
    FunctionProfile p(parse(src), Domain::interval(-3, 3));
    for (int i = 0; i < 34; ++i) {
      double x = ux(rng);
      double h = 1e-4;
      double fd = (p.f(x + h) - 2 * p.f(x) + p.f(x - h)) / (h * h) / 2;
      CHECK(std::abs(curvature(p, x) - fd) <=
            1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("canonical translation representative") {
  FunctionProfile p(parse("sin(2*x - 1)"), Domain::periodic(M_PI));
  FunctionProfile c = canonical_translate(p);
  for (double x : {0.2, 0.9, 2.2})
    CHECK(c.f(x) == doctest::Approx(std::sin(2 * x)).epsilon(1e-9));

  // idempotence
  FunctionProfile c2 = canonical_translate(c);
  for (double x : {0.2, 0.9, 2.2})
    CHECK(c2.f(x) == doctest::Approx(c.f(x)).epsilon(1e-9));

  // mirror image lands on the same representative
  FunctionProfile m(parse("sin(-2*x)"), Domain::periodic(M_PI));
  FunctionProfile cm = canonical_translate(m);
  for (double x : {0.2, 0.9, 2.2})
    CHECK(cm.f(x) == doctest::Approx(std::sin(2 * x)).epsilon(1e-9));

  CHECK_THROWS_AS(
      canonical_translate(FunctionProfile(parse("2"), Domain::periodic(1.0))),
      ValidationError);
}

TEST_CASE("canonical form is constant on translation/flip orbits") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ush(0.0, M_PI);
  FunctionProfile base = sine_profile();
  FunctionProfile ref = canonical_translate(base);
  for (int i = 0; i < 20; ++i) {
    double b = ush(rng);
    FunctionProfile moved = base.translated(b);
    if (rng() % 2) moved = moved.mirrored();
    FunctionProfile c = canonical_translate(moved);
    for (double x : {0.3, 1.1, 2.0, 2.9})
      CHECK(c.f(x) == doctest::Approx(ref.f(x)).epsilon(1e-6));
  }
}

TEST_CASE("symmetry class is invariant under canonical translation") {
  for (const char* src : {"sin(2*x - 1)", "sin(2*x)*(1.1 + cos(2*x))"}) {
    FunctionProfile p(parse(src), Domain::periodic(M_PI));
    SymmetryClass sa = detect_symmetry(p);
    SymmetryClass sb = detect_symmetry(canonical_translate(p));
    CHECK(sa.label() == sb.label());
  }
}

TEST_CASE("full affine orbit equivalence search") {
  FunctionProfile f(parse("sin(2*x)"), Domain::periodic(M_PI));
  // a^-2 f(a x + b) with a = 1/2, b = 0.3
  FunctionProfile g(parse("4*sin(x + 0.3)"), Domain::periodic(2 * M_PI));
  CHECK(equivalent_profiles_affine(f, g));
  FunctionProfile h(parse("sin(2*x) + 0.5"), Domain::periodic(M_PI));
  CHECK_FALSE(equivalent_profiles_affine(f, h));
}
