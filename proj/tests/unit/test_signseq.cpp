#include <doctest.h>

#include <cmath>
#include <random>

#include "lks/signseq.hpp"

using namespace lks;

namespace {

SignSeq lin(std::vector<int> s) { return SignSeq{std::move(s), false}; }
SignSeq cyc(std::vector<int> s) { return SignSeq{std::move(s), true}; }

int sum_formula(const std::vector<int>& signs) {
  int sum = 0;
  for (std::size_t j = 0; j < signs.size(); ++j)
    sum += ((j + 1) % 2 == 0 ? 1 : -1) * signs[j];
  return sum;
}

}  // namespace

TEST_CASE("reduction of the worked sequences") {
  CHECK(reduce(lin({1, 1})).signs.empty());
  CHECK(reduce(lin({1, -1, 1, -1})).signs.size() == 4);
  CHECK(reduce(cyc({1, -1, 1, -1})).signs.size() == 4);
  CHECK(reduce(cyc({1, 1})).signs.empty());
  CHECK(reduce(cyc({1, -1, -1, 1})).signs.empty());

  // the figure sequence (-,-,+,-,+,-,+,+)
  SignSeq fig = lin({-1, -1, 1, -1, 1, -1, 1, 1});
  SignSeq red = reduce(fig);
  CHECK(red.signs.size() == 4);
}

TEST_CASE("serialization of sequences") {
  SignSeq s = cyc({1, -1, 1, -1});
  CHECK(s.str() == "cyclic:+-+-");
  SignSeq t = SignSeq::from_string("linear:++-");
  CHECK_FALSE(t.cyclic);
  CHECK(t.signs == std::vector<int>{1, 1, -1});
  CHECK(SignSeq::from_string(s.str()).signs == s.signs);
  CHECK_THROWS_AS(SignSeq::from_string("++-"), ValidationError);
}

TEST_CASE("enrollment values") {
  CHECK(enrollment(lin({1, -1})).quarter_turns == -2);
  CHECK(enrollment(lin({1, -1})).turns() == doctest::Approx(-0.5));
  CHECK(enrollment(lin({1, 1})).quarter_turns == 0);
  SignSeq fig = lin({-1, -1, 1, -1, 1, -1, 1, 1});
  CHECK(std::abs(enrollment(fig).quarter_turns) == 4);  // one full turn
  CHECK_THROWS_AS(enrollment(cyc({1, -1})), ValidationError);
}

TEST_CASE("enrollment magnitude equals the reduced length") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> s(1 + rng() % 16);
    for (int& v : s) v = rng() % 2 ? 1 : -1;
    int M = static_cast<int>(reduce(lin(s)).signs.size());
    CHECK(std::abs(enrollment(lin(s)).quarter_turns) == M);
  }
}

TEST_CASE("cyclic reduced length agrees with the alternating sum") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> s(2 * (1 + rng() % 8));
    for (int& v : s) v = rng() % 2 ? 1 : -1;
    int L = static_cast<int>(reduce(cyc(s)).signs.size());
    CHECK(L == std::abs(sum_formula(s)));
  }
}

TEST_CASE("reduction is confluent under randomized deletion order") {
  std::mt19937 rng(7);
  auto random_reduce = [&](std::vector<int> s) {
    for (;;) {
      std::vector<std::size_t> moves;
      for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] == s[i + 1]) moves.push_back(i);
      if (moves.empty()) return s;
      std::size_t pos = moves[rng() % moves.size()];
      s.erase(s.begin() + pos, s.begin() + pos + 2);
    }
  };
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> s(rng() % 18);
    for (int& v : s) v = rng() % 2 ? 1 : -1;
    CHECK(random_reduce(s).size() == reduce(lin(s)).signs.size());
  }
}

namespace {

FunctionProfile sine_profile() {
  return FunctionProfile(parse("sin(2*x)"), Domain::periodic(M_PI));
}

}  // namespace

TEST_CASE("torus component index") {
  // no marks: flat component
  TorusInvariant flat = build_torus(sine_profile(), 1.0, 0.0, {});
  CHECK(torus_r(flat).r == 0);

  // alternating signs on four marks
  FunctionProfile four(parse("sin(4*pi*x)"), Domain::periodic(1.0));
  TorusInvariant alt =
      build_torus(four, 1.0, 0.0, {0.125, 0.375, 0.625, 0.875});
  TorusComponentIndex ia = torus_r(alt);
  CHECK(ia.r == 2);
  CHECK(std::abs(ia.k_plus - ia.k_minus) == 2 * ia.r);

  // two marks of equal sign cancel
  TorusInvariant same = build_torus(four, 1.0, 0.0, {0.125, 0.625});
  CHECK(torus_r(same).r == 0);

  // the Clifton-Pohl marking (+,-)
  TorusInvariant cp =
      build_torus(sine_profile(), 1.0, 0.0, {M_PI / 4, 3 * M_PI / 4});
  CHECK(torus_r(cp).r == 1);
}

TEST_CASE("component set of the metric space over a profile") {
  CHECK(torus_component_set(sine_profile()) ==
        TorusComponentSet::AllComponents);
  FunctionProfile pos(parse("1 + 0.5*sin(2*x)"), Domain::periodic(M_PI));
  CHECK(torus_component_set(pos) == TorusComponentSet::FlatOnly);
  FunctionProfile neg(parse("0 - 2 - sin(2*x)"), Domain::periodic(M_PI));
  CHECK(torus_component_set(neg) == TorusComponentSet::FlatOnly);
}

TEST_CASE("type-1 bottle component index") {
  FunctionProfile p = sine_profile();
  BottleInvariant1 posmark = build_bottle1(p, 1.0, {M_PI / 4});
  BottleComponentIndex a = bottle1_component(posmark);
  CHECK(a.n_abs == 0);
  CHECK(a.temporal_orientable);
  CHECK_FALSE(a.spatial_orientable);
  CHECK(a.m_bar == 0);

  BottleInvariant1 negmark = build_bottle1(p, 1.0, {3 * M_PI / 4});
  BottleComponentIndex b = bottle1_component(negmark);
  CHECK_FALSE(b.temporal_orientable);
  CHECK(b.m_bar == 1);

  // sign-changing profiles realize both flat components
  auto set = bottle1_component_set(p);
  REQUIRE(set.size() == 2);
  CHECK(set[0] == std::make_pair(0, 0));
  CHECK(set[1] == std::make_pair(0, 1));
  FunctionProfile pos(parse("1 + 0.5*sin(2*x)"), Domain::periodic(M_PI));
  CHECK(bottle1_component_set(pos) ==
        std::vector<std::pair<int, int>>{{0, 0}});
}

TEST_CASE("orientability of type-1 bottles is move invariant") {
  FunctionProfile p = sine_profile();
  BottleInvariant1 a = build_bottle1(p, 1.0, {M_PI / 4});
  BottleComponentIndex ia = bottle1_component(a);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uy(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    BottleInvariant1 m = bottle1_shift(a, uy(rng));
    if (rng() % 2) m = bottle1_flip(m);
    CHECK(bottle1_component(m).temporal_orientable == ia.temporal_orientable);
  }
}

TEST_CASE("type-2 bottle index on the three anchored sign patterns") {
  // both short leaves negative: n_abs = 0, temporally orientable
  BottleComponentIndex a = bottle2_nabs_from_signs({-1, -1});
  CHECK(a.n_abs == 0);
  CHECK(a.temporal_orientable);
  CHECK(a.m_bar == 0);

  // opposite leaves: n_abs = 1
  BottleComponentIndex b = bottle2_nabs_from_signs({1, -1});
  CHECK(b.n_abs == 1);
  CHECK_FALSE(b.m_bar.has_value());

  // (-,+,-): n_abs = 2
  BottleComponentIndex c = bottle2_nabs_from_signs({-1, 1, -1});
  CHECK(c.n_abs == 2);
  CHECK(c.temporal_orientable);

  // same through a full invariant
  FunctionProfile even(parse("0 - cos(2*pi*x) - 0.2"), Domain::periodic(2.0));
  BottleInvariant2 inv = build_bottle2(even, 1.0, {0.0, 0.5, 1.0});
  BottleComponentIndex d = bottle2_nabs(inv);
  CHECK(d.n_abs == 2);
}

TEST_CASE("n_abs parity matches the short-leaf signs") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> s(2 + rng() % 9);
    for (int& v : s) v = rng() % 2 ? 1 : -1;
    BottleComponentIndex idx = bottle2_nabs_from_signs(s);
    int s1 = s.front() > 0 ? 0 : 1, sk = s.back() > 0 ? 0 : 1;
    CHECK(idx.n_abs % 2 == (s1 + sk) % 2);
  }
}

TEST_CASE("type-2 bottle component sets over profiles") {
  FunctionProfile pos(parse("1 + 0.5*cos(pi*x)"), Domain::periodic(2.0));
  Bottle2ComponentSet a = bottle2_component_set(pos);
  CHECK(a.kind == Bottle2ComponentSet::Kind::Single);
  CHECK(a.m_bar == 1);

  FunctionProfile cospix(parse("cos(pi*x)"), Domain::periodic(2.0));
  CHECK(bottle2_component_set(cospix).kind == Bottle2ComponentSet::Kind::All);

  FunctionProfile neg(parse("0 - cos(2*pi*x) - 0.2"), Domain::periodic(2.0));
  Bottle2ComponentSet c = bottle2_component_set(neg);
  CHECK(c.kind == Bottle2ComponentSet::Kind::EvenByParity);
  CHECK(c.m_bar == 0);  // f(0) < 0

  FunctionProfile odd(parse("sin(pi*x)"), Domain::periodic(2.0));
  CHECK_THROWS_AS(bottle2_component_set(odd), ValidationError);
}
