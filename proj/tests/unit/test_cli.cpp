#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lks/cli.hpp"

using namespace lks;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/lks_test_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

std::string golden_path(const std::string& name) {
  return std::string(LKS_GOLDEN_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSineConf = "function = sin(2*x)\ndomain = periodic:pi\n";

}  // namespace

TEST_CASE("analyze output matches the golden file byte for byte") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult r = run_cli({"analyze", "--profile", conf, "--format", "structured"});
  REQUIRE(r.code == 0);
  CHECK(r.out == read_file(golden_path("analyze_sine.txt")));
}

TEST_CASE("quotients output matches the golden file") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult r =
      run_cli({"quotients", "--profile", conf, "--format", "structured"});
  REQUIRE(r.code == 0);
  CHECK(r.out == read_file(golden_path("quotients_sine.txt")));
}

TEST_CASE("census override rows") {
  CliResult r = run_cli({"quotients", "--case", "(0)", "--k", "2", "--l", "2",
                         "--format", "structured"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("row.0 = j=0 count=1 signature=(0;4)^+ chi=-2") !=
        std::string::npos);
  CHECK(r.out.find("row.1 = j=2 count=1 signature=(1;2)^+ chi=-2") !=
        std::string::npos);
  CHECK(r.out.find("total = 2") != std::string::npos);
}

TEST_CASE("exit codes") {
  // expression syntax error -> 2
  std::string bad = write_temp("bad.conf",
                               "function = sin(2*x\ndomain = periodic:pi\n");
  CHECK(run_cli({"analyze", "--profile", bad}).code == 2);

  // constant profile -> rejected as a validation error
  std::string cst = write_temp("cst.conf",
                               "function = 2\ndomain = interval:-1,1\n");
  CHECK(run_cli({"analyze", "--profile", cst}).code == 1);

  // missing file -> 1
  CHECK(run_cli({"analyze", "--profile", "/nonexistent.conf"}).code == 1);

  // bad usage -> 2
  CHECK(run_cli({"frobnicate"}).code == 2);

  // success -> 0
  std::string conf = write_temp("sine.conf", kSineConf);
  CHECK(run_cli({"analyze", "--profile", conf}).code == 0);
}

TEST_CASE("classify / compare round trip") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult a = run_cli({"classify", "--profile", conf, "--t0", "2", "--tau",
                         "0.3", "--marks", "pi/4,3*pi/4", "--format",
                         "structured"});
  REQUIRE(a.code == 0);
  std::string fa = write_temp("inv_a.txt", a.out);

  // identical data with a translated profile: same class
  std::string conf2 = write_temp(
      "sine_shift.conf", "function = sin(2*x - 1)\ndomain = periodic:pi\n");
  CliResult b = run_cli({"classify", "--profile", conf2, "--t0", "2", "--tau",
                         "0.3", "--marks",
                         "pi/4 + 0.5,3*pi/4 + 0.5", "--format", "structured"});
  REQUIRE(b.code == 0);
  std::string fb = write_temp("inv_b.txt", b.out);

  CliResult cmp =
      run_cli({"compare", "--a", fa, "--b", fb, "--format", "structured"});
  REQUIRE(cmp.code == 0);
  CHECK(cmp.out.find("verdict = EQUIVALENT") != std::string::npos);

  CliResult self =
      run_cli({"compare", "--a", fa, "--b", fa, "--format", "structured"});
  CHECK(self.out.find("verdict = EQUIVALENT") != std::string::npos);

  // canonical forms of equivalent data carry identical marks and twist
  auto field = [](const std::string& s, const std::string& key) {
    std::size_t pos = s.find(key + " = ");
    REQUIRE(pos != std::string::npos);
    std::size_t end = s.find('\n', pos);
    return s.substr(pos, end - pos);
  };
  CHECK(field(a.out, "marks") == field(b.out, "marks"));
  CHECK(field(a.out, "t0") == field(b.out, "t0"));

  // type mismatch
  CliResult bot = run_cli({"classify", "--profile", conf, "--type", "bottle1",
                           "--t0", "2", "--marks", "pi/4", "--format",
                           "structured"});
  REQUIRE(bot.code == 0);
  std::string fc = write_temp("inv_c.txt", bot.out);
  CHECK(run_cli({"compare", "--a", fa, "--b", fc}).code == 1);
}

TEST_CASE("components command") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult inv = run_cli({"classify", "--profile", conf, "--t0", "1", "--tau",
                           "0", "--marks", "pi/4,3*pi/4", "--format",
                           "structured"});
  REQUIRE(inv.code == 0);
  std::string fi = write_temp("inv_r.txt", inv.out);
  CliResult r =
      run_cli({"components", "--invariant", fi, "--format", "structured"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("r = 1") != std::string::npos);

  CliResult prof = run_cli(
      {"components", "--profile", conf, "--type", "torus", "--format",
       "structured"});
  CHECK(prof.out.find("realizable = all_components") != std::string::npos);
}

TEST_CASE("geodesic and conjugate commands") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult g = run_cli({"geodesic", "--profile", conf, "--x0", "0.3", "--p0",
                         "0.2", "--q0", "0.1", "--tmax", "5", "--format",
                         "structured"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("t x y p q C E") != std::string::npos);

  std::string lifted = write_temp(
      "lifted.conf", "function = sin(2*x) + 1.2\ndomain = periodic:pi\n");
  std::string plot = "/tmp/lks_test_plot.svg";
  std::remove(plot.c_str());
  CliResult c = run_cli({"conjugate", "--profile", lifted, "--eps", "1", "--C",
                         "1", "--plot", plot, "--format", "structured"});
  REQUIRE(c.code == 0);
  CHECK(c.out.find("status = found") != std::string::npos);
  std::string svg = read_file(plot);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  std::string flatc = write_temp(
      "flat.conf", "function = 1 + 0*x\ndomain = interval:-50,50\n");
  CliResult nf = run_cli({"conjugate", "--profile", flatc, "--C", "2",
                          "--format", "structured"});
  REQUIRE(nf.code == 0);
  CHECK(nf.out.find("status = not_found") != std::string::npos);
}

TEST_CASE("human format carries the same body") {
  std::string conf = write_temp("sine.conf", kSineConf);
  CliResult s = run_cli({"analyze", "--profile", conf, "--format", "structured"});
  CliResult h = run_cli({"analyze", "--profile", conf});
  CHECK(h.out.find(s.out) != std::string::npos);
}
