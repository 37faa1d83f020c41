#include <doctest.h>

#include <cmath>
#include <random>

#include "lks/classify.hpp"

using namespace lks;

namespace {

FunctionProfile sine_profile() {
  return FunctionProfile(parse("sin(2*x)"), Domain::periodic(M_PI));
}

TorusInvariant cp_invariant(double t0 = 2.0, double tau = 0.6) {
  return build_torus(sine_profile(), t0, tau, {M_PI / 4, 3 * M_PI / 4});
}

double fbar_distance(const FunctionProfile& a, const FunctionProfile& b) {
  double worst = 0;
  for (int i = 0; i < 512; ++i) {
    double x = (i + 0.5) / 512 * b.domain().period;
    worst = std::max(worst, std::abs(a.f(x) - b.f(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("torus invariant construction and validation") {
  TorusInvariant inv = cp_invariant();
  CHECK(validate_torus(inv).empty());
  CHECK(inv.fbar.domain().period == doctest::Approx(1.0));
  REQUIRE(inv.marks.size() == 2);
  CHECK(inv.marks[0] == doctest::Approx(0.25));
  CHECK(inv.marks[1] == doctest::Approx(0.75));
  // mass normalization: fbar = sin(2 pi x) / pi^2
  CHECK(inv.fbar.f(0.25) ==
        doctest::Approx(1.0 / (M_PI * M_PI)).epsilon(1e-12));

  // a marking-free vanishing profile is a valid invariant
  TorusInvariant no_marks = build_torus(sine_profile(), 1.0, 0.0, {});
  CHECK(validate_torus(no_marks).empty());

  // marks at zeros are rejected
  CHECK_THROWS_AS(build_torus(sine_profile(), 1.0, 0.0, {M_PI / 2}),
                  ValidationError);
  // elementary profiles are rejected from the torus path
  CHECK_THROWS_AS(
      build_torus(FunctionProfile(parse("sin(2*x) + 1.2"),
                                  Domain::periodic(M_PI)),
                  1.0, 0.0, {}),
      ValidationError);
}

TEST_CASE("validation catches odd markings and misplaced marks") {
  TorusInvariant inv = cp_invariant();
  inv.marks.pop_back();  // odd cardinality now
  auto v = validate_torus(inv);
  bool found = false;
  for (auto& s : v)
    if (s.find("even") != std::string::npos) found = true;
  CHECK(found);

  TorusInvariant inv2 = cp_invariant();
  inv2.marks[0] = 0.19;  // not a midpoint
  v = validate_torus(inv2);
  found = false;
  for (auto& s : v)
    if (s.find("midpoint") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("torus equivalence moves") {
  TorusInvariant a = cp_invariant();

  CHECK(equivalent_tori(a, a, 1e-6).equivalent);
  CHECK(equivalent_tori(a, torus_flip(a), 1e-6).equivalent);
  CHECK(equivalent_tori(a, torus_shift(a, 0.37), 1e-6).equivalent);
  CHECK(equivalent_tori(a, torus_shift(torus_flip(a), 0.81), 1e-6).equivalent);

  // a shift crossing exactly one mark flips the twist
  TorusInvariant b = torus_shift(a, 0.5);  // crosses the mark at 0.25
  CHECK(b.tau == doctest::Approx(2.0 - 0.6));
  CHECK(equivalent_tori(a, b, 1e-6).equivalent);

  // forcing the unflipped twist onto the shifted data breaks equivalence
  TorusInvariant wrong = b;
  wrong.tau = a.tau;
  CHECK_FALSE(equivalent_tori(a, wrong, 1e-6).equivalent);

  // different flow period
  TorusInvariant other = cp_invariant(3.0, 0.6);
  CHECK_FALSE(equivalent_tori(a, other, 1e-6).equivalent);
}

TEST_CASE("t0 is exactly invariant under all moves") {
  TorusInvariant a = cp_invariant();
  CHECK(torus_flip(a).t0 == a.t0);
  CHECK(torus_shift(a, 0.3).t0 == a.t0);
  CHECK(canonical_torus(a).t0 == a.t0);
}

TEST_CASE("canonical torus representative") {
  TorusInvariant a = cp_invariant();
  TorusInvariant c = canonical_torus(a);
  CHECK(validate_torus(c).empty());

  // idempotence
  TorusInvariant cc = canonical_torus(c);
  CHECK(fbar_distance(cc.fbar, c.fbar) <= 1e-9);
  CHECK(cc.tau == doctest::Approx(c.tau).epsilon(1e-9));

  // constancy on the move orbit
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> uy(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    TorusInvariant moved = torus_shift(a, uy(rng));
    if (rng() % 2) moved = torus_flip(moved);
    TorusInvariant cm = canonical_torus(moved);
    CHECK(fbar_distance(cm.fbar, c.fbar) <= 1e-6);
    REQUIRE(cm.marks.size() == c.marks.size());
    for (std::size_t j = 0; j < c.marks.size(); ++j)
      CHECK(cm.marks[j] == doctest::Approx(c.marks[j]).epsilon(1e-6));
    CHECK(std::abs(cm.tau - c.tau) <= 1e-6);
  }
}

TEST_CASE("type-1 bottle moves") {
  FunctionProfile p = sine_profile();
  BottleInvariant1 a = build_bottle1(p, 1.5, {M_PI / 4});
  CHECK(validate_bottle1(a).empty());
  CHECK(equivalent_bottles1(a, bottle1_shift(a, 0.4), 1e-6).equivalent);
  CHECK(equivalent_bottles1(a, bottle1_flip(a), 1e-6).equivalent);

  BottleInvariant1 other = build_bottle1(p, 2.5, {M_PI / 4});
  CHECK_FALSE(equivalent_bottles1(a, other, 1e-6).equivalent);

  // even markings are invalid for type 1
  CHECK_THROWS_AS(build_bottle1(p, 1.0, {M_PI / 4, 3 * M_PI / 4}),
                  ValidationError);
}

TEST_CASE("type-2 bottle swap move") {
  // even 2-periodic profile vanishing away from 0 and 1, asymmetric marks
  FunctionProfile p(parse("0 - cos(2*pi*x) - 0.2"), Domain::periodic(2.0));
  // half-period marks: the two short leaves plus the interior component
  BottleInvariant2 a = build_bottle2(p, 1.0, {0.0, 0.5, 1.0});
  CHECK(validate_bottle2(a).empty());

  BottleInvariant2 s = bottle2_swap(a);
  CHECK(validate_bottle2(s).empty());
  CHECK(equivalent_bottles2(a, s, 1e-6).equivalent);

  // the swap is an involution on the representation
  BottleInvariant2 ss = bottle2_swap(s);
  CHECK(fbar_distance(ss.fbar, a.fbar) <= 1e-9);
  REQUIRE(ss.marks.size() == a.marks.size());
  for (std::size_t i = 0; i < a.marks.size(); ++i)
    CHECK(ss.marks[i] == doctest::Approx(a.marks[i]).epsilon(1e-9));
}

TEST_CASE("type-2 bottle swap transforms asymmetric marks") {
  std::vector<double> marks = {0.0, 0.3, 1.0, 1.7};
  // direct move application on the marking set
  BottleInvariant2 raw;
  raw.t0 = 1.0;
  raw.fbar = FunctionProfile(parse("cos(pi*x)"), Domain::periodic(2.0));
  raw.marks = marks;
  BottleInvariant2 sw = bottle2_swap(raw);
  REQUIRE(sw.marks.size() == 4);
  CHECK(sw.marks[0] == doctest::Approx(0.0));
  CHECK(sw.marks[1] == doctest::Approx(0.7));
  CHECK(sw.marks[2] == doctest::Approx(1.0));
  CHECK(sw.marks[3] == doctest::Approx(1.3));
}

TEST_CASE("serialization round trips bit-exactly") {
  TorusInvariant inv = cp_invariant(2.0, 0.6180339887498949);
  std::string s1 = serialize_torus(inv);
  AnyInvariant back = parse_invariant(s1);
  REQUIRE(back.type == AnyInvariant::Type::Torus);
  std::string s2 = serialize_torus(back.torus);
  CHECK(s1 == s2);
  CHECK(back.torus.t0 == inv.t0);
  CHECK(back.torus.tau == inv.tau);

  BottleInvariant1 b1 = build_bottle1(sine_profile(), 1.25, {M_PI / 4});
  std::string t1 = serialize_bottle1(b1);
  CHECK(serialize_bottle1(parse_invariant(t1).bottle1) == t1);
}
