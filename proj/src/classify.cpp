#include "lks/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lks {

namespace {

constexpr double kMarkTol = 1e-6;

double wrap01(double x, double period = 1.0) {
  double y = std::fmod(x, period);
  if (y < 0) y += period;
  // snap values that wrapped to the very top back to 0
  if (period - y < 1e-12) y = 0.0;
  return y;
}

double cyc_dist(double a, double b, double period) {
  double d = std::abs(wrap01(a, period) - wrap01(b, period));
  return std::min(d, period - d);
}

std::vector<double> component_midpoints(const FunctionProfile& fbar) {
  std::vector<double> mids;
  for (const Component& c : components(fbar).comps)
    mids.push_back(wrap01(c.midpoint(), fbar.domain().period));
  std::sort(mids.begin(), mids.end());
  return mids;
}

void check_marks_at_midpoints(const FunctionProfile& fbar,
                              const std::vector<double>& marks, double period,
                              std::vector<std::string>& out) {
  std::vector<double> mids = component_midpoints(fbar);
  for (double m : marks) {
    bool hit = false;
    for (double mid : mids)
      if (cyc_dist(m, mid, period) <= kMarkTol) hit = true;
    if (!hit)
      out.push_back("mark " + std::to_string(m) +
                    " is not a component midpoint");
  }
  for (std::size_t i = 0; i + 1 < marks.size(); ++i)
    if (marks[i + 1] - marks[i] <= kMarkTol) {
      out.push_back("marks must be distinct and sorted");
      break;
    }
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// sup |a - b| over a uniform grid of one period
double profile_distance(const FunctionProfile& a, const FunctionProfile& b) {
  double T = b.domain().period;
  double worst = 0.0;
  for (int i = 0; i < 1024; ++i) {
    double x = (i + 0.5) * T / 1024;
    worst = std::max(worst, std::abs(a.f(x) - b.f(x)));
  }
  return worst;
}

// max cyclic distance under the best index rotation; infinity on size
// mismatch
double marks_distance(const std::vector<double>& a, const std::vector<double>& b,
                      double period) {
  if (a.size() != b.size()) return 1e300;
  if (a.empty()) return 0.0;
  std::size_t n = a.size();
  double best = 1e300;
  for (std::size_t r = 0; r < n; ++r) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, cyc_dist(a[(j + r) % n], b[j], period));
    best = std::min(best, worst);
  }
  return best;
}

std::vector<double> shift_marks(const std::vector<double>& marks, double y,
                                double period) {
  std::vector<double> out;
  out.reserve(marks.size());
  for (double m : marks) out.push_back(wrap01(m - y, period));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> flip_marks(const std::vector<double>& marks, double period) {
  std::vector<double> out;
  out.reserve(marks.size());
  for (double m : marks) out.push_back(wrap01(period - m, period));
  std::sort(out.begin(), out.end());
  return out;
}

int marks_at_or_before(const std::vector<double>& marks, double y) {
  int i = 0;
  for (double m : marks)
    if (m <= y + 1e-12) ++i;
  return i;
}

std::vector<double> zero_positions(const FunctionProfile& fbar) {
  std::vector<double> zs;
  for (const Zero& z : find_zeros(fbar)) zs.push_back(z.x0);
  return zs;
}

}  // namespace

std::vector<int> mark_signs(const FunctionProfile& fbar,
                            const std::vector<double>& marks) {
  std::vector<int> out;
  double tol_id = fbar.tol() * std::max(1.0, fbar.scale());
  for (double m : marks) {
    double v = fbar.f(m);
    if (std::abs(v) <= tol_id)
      throw ValidationError("mark at a zero of the profile");
    out.push_back(v > 0 ? 1 : -1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation.

std::vector<std::string> validate_torus(const TorusInvariant& inv) {
  std::vector<std::string> out;
  if (!(inv.t0 > 0)) out.push_back("t0 must be positive");
  if (!inv.fbar.domain().is_periodic() ||
      std::abs(inv.fbar.domain().period - 1.0) > 1e-9)
    out.push_back("fbar must live on a period-1 domain");
  if (inv.fbar.is_constant()) out.push_back("fbar must be non-constant");
  ZeroSetAnalysis za = analyze_zero_set(inv.fbar);
  if (za.zeros.empty() && za.plateaus.empty())
    out.push_back("fbar must vanish (elementary tori use the elementary invariant)");
  if (inv.marks.size() % 2 != 0) out.push_back("even marking required");
  check_marks_at_midpoints(inv.fbar, inv.marks, 1.0, out);
  if (inv.tau < 0 || inv.tau >= inv.t0 + 1e-12)
    out.push_back("tau must be reduced into [0, t0)");
  return out;
}

std::vector<std::string> validate_bottle1(const BottleInvariant1& inv) {
  std::vector<std::string> out;
  if (!(inv.t0 > 0)) out.push_back("t0 must be positive");
  if (!inv.fbar.domain().is_periodic() ||
      std::abs(inv.fbar.domain().period - 1.0) > 1e-9)
    out.push_back("fbar must live on a period-1 domain");
  if (inv.fbar.is_constant()) out.push_back("fbar must be non-constant");
  if (find_zeros(inv.fbar).empty()) out.push_back("fbar must vanish");
  if (inv.marks.size() % 2 != 1) out.push_back("odd marking required");
  check_marks_at_midpoints(inv.fbar, inv.marks, 1.0, out);
  return out;
}

std::vector<std::string> validate_bottle2(const BottleInvariant2& inv) {
  std::vector<std::string> out;
  if (!(inv.t0 > 0)) out.push_back("t0 must be positive");
  if (!inv.fbar.domain().is_periodic() ||
      std::abs(inv.fbar.domain().period - 2.0) > 1e-9)
    out.push_back("fbar must live on a period-2 domain");
  double tol_id = inv.fbar.tol() * std::max(1.0, inv.fbar.scale());
  for (int i = 0; i < 257; ++i) {
    double x = (i + 0.5) * 2.0 / 257;
    if (std::abs(inv.fbar.f(-x) - inv.fbar.f(x)) > tol_id) {
      out.push_back("fbar must be even");
      break;
    }
  }
  if (std::abs(inv.fbar.f(0.0)) <= tol_id || std::abs(inv.fbar.f(1.0)) <= tol_id)
    out.push_back("fbar must be nonzero at 0 and 1");
  bool has0 = false, has1 = false;
  for (double m : inv.marks) {
    if (cyc_dist(m, 0.0, 2.0) <= kMarkTol) has0 = true;
    if (cyc_dist(m, 1.0, 2.0) <= kMarkTol) has1 = true;
  }
  if (!has0 || !has1) out.push_back("marks must contain 0 and 1");
  for (double m : inv.marks) {
    bool mirrored = false;
    for (double m2 : inv.marks)
      if (cyc_dist(m2, 2.0 - m, 2.0) <= kMarkTol) mirrored = true;
    if (!mirrored) {
      out.push_back("marks must be symmetric under x -> -x");
      break;
    }
  }
  check_marks_at_midpoints(inv.fbar, inv.marks, 2.0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Moves.

TorusInvariant torus_flip(const TorusInvariant& inv) {
  TorusInvariant out;
  out.t0 = inv.t0;
  out.tau = wrap01(-inv.tau, inv.t0);
  out.fbar = inv.fbar.mirrored();
  out.marks = flip_marks(inv.marks, 1.0);
  return out;
}

TorusInvariant torus_shift(const TorusInvariant& inv, double y) {
  double yh = wrap01(y, 1.0);
  TorusInvariant out;
  out.t0 = inv.t0;
  int i = marks_at_or_before(inv.marks, yh);
  out.tau = i % 2 == 0 ? inv.tau : wrap01(-inv.tau, inv.t0);
  out.fbar = inv.fbar.translated(yh);
  out.marks = shift_marks(inv.marks, yh, 1.0);
  return out;
}

BottleInvariant1 bottle1_flip(const BottleInvariant1& inv) {
  BottleInvariant1 out;
  out.t0 = inv.t0;
  out.fbar = inv.fbar.mirrored();
  out.marks = flip_marks(inv.marks, 1.0);
  return out;
}

BottleInvariant1 bottle1_shift(const BottleInvariant1& inv, double y) {
  double yh = wrap01(y, 1.0);
  BottleInvariant1 out;
  out.t0 = inv.t0;
  out.fbar = inv.fbar.translated(yh);
  out.marks = shift_marks(inv.marks, yh, 1.0);
  return out;
}

BottleInvariant2 bottle2_swap(const BottleInvariant2& inv) {
  BottleInvariant2 out;
  out.t0 = inv.t0;
  // x -> 1 - x: even and 2-periodic stays even and 2-periodic
  out.fbar = FunctionProfile(substitute_affine(inv.fbar.expr(), -1.0, 1.0),
                             inv.fbar.domain(), inv.fbar.tol(),
                             inv.fbar.grid_n());
  for (double m : inv.marks) out.marks.push_back(wrap01(1.0 - m, 2.0));
  std::sort(out.marks.begin(), out.marks.end());
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence.

namespace {

// candidate shifts aligning the zero sets of a and b
std::vector<double> candidate_shifts(const FunctionProfile& a,
                                     const FunctionProfile& b) {
  std::vector<double> out{0.0};
  std::vector<double> za = zero_positions(a), zb = zero_positions(b);
  if (!zb.empty())
    for (double z : za) out.push_back(wrap01(z - zb.front(), 1.0));
  return out;
}

struct Candidate {
  double fdist, mdist, taudist;
  double residual() const { return std::max({fdist, mdist, taudist}); }
};

Candidate torus_candidate(const TorusInvariant& moved, const TorusInvariant& b) {
  Candidate c;
  c.fdist = profile_distance(moved.fbar, b.fbar);
  c.mdist = marks_distance(moved.marks, b.marks, 1.0);
  c.taudist = cyc_dist(moved.tau, b.tau, b.t0);
  return c;
}

EquivalenceReport finish(bool ok, double best, const std::string& witness,
                         double tol) {
  EquivalenceReport r;
  r.equivalent = ok;
  r.residual = best;
  r.witness = ok ? witness : "";
  r.borderline = best > 0.1 * tol && best < 10 * tol;
  return r;
}

}  // namespace

EquivalenceReport equivalent_tori(const TorusInvariant& a,
                                  const TorusInvariant& b, double tol) {
  if (std::abs(a.t0 - b.t0) > tol) return finish(false, 1e300, "", tol);
  double best = 1e300;
  std::string witness;
  for (int orient = 0; orient < 2; ++orient) {
    TorusInvariant base = orient ? torus_flip(a) : a;
    for (double y : candidate_shifts(base.fbar, b.fbar)) {
      TorusInvariant moved = torus_shift(base, y);
      Candidate c = torus_candidate(moved, b);
      if (c.residual() < best) {
        best = c.residual();
        char buf[128];
        std::snprintf(buf, sizeof buf, "%sshift y=%.12g (marks crossed: %d)",
                      orient ? "flip, " : "", y,
                      marks_at_or_before(base.marks, wrap01(y, 1.0)));
        witness = buf;
      }
    }
  }
  return finish(best <= tol, best, witness, tol);
}

EquivalenceReport equivalent_bottles1(const BottleInvariant1& a,
                                      const BottleInvariant1& b, double tol) {
  if (std::abs(a.t0 - b.t0) > tol) return finish(false, 1e300, "", tol);
  double best = 1e300;
  std::string witness;
  for (int orient = 0; orient < 2; ++orient) {
    BottleInvariant1 base = orient ? bottle1_flip(a) : a;
    for (double y : candidate_shifts(base.fbar, b.fbar)) {
      BottleInvariant1 moved = bottle1_shift(base, y);
      double r = std::max(profile_distance(moved.fbar, b.fbar),
                          marks_distance(moved.marks, b.marks, 1.0));
      if (r < best) {
        best = r;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%sshift y=%.12g", orient ? "flip, " : "",
                      y);
        witness = buf;
      }
    }
  }
  return finish(best <= tol, best, witness, tol);
}

EquivalenceReport equivalent_bottles2(const BottleInvariant2& a,
                                      const BottleInvariant2& b, double tol) {
  if (std::abs(a.t0 - b.t0) > tol) return finish(false, 1e300, "", tol);
  double best = 1e300;
  std::string witness;
  for (int swapped = 0; swapped < 2; ++swapped) {
    BottleInvariant2 moved = swapped ? bottle2_swap(a) : a;
    double r = std::max(profile_distance(moved.fbar, b.fbar),
                        marks_distance(moved.marks, b.marks, 2.0));
    if (r < best) {
      best = r;
      witness = swapped ? "short-leaf swap" : "identity";
    }
  }
  return finish(best <= tol, best, witness, tol);
}

// ---------------------------------------------------------------------------
// Canonical torus representative.

namespace {

struct TorusKey {
  std::vector<double> sig;
  std::vector<double> marks;
  double tau;
};

// tolerance-aware lexicographic order; returns -1/0/1
int key_compare(const TorusKey& a, const TorusKey& b, double tol) {
  int c = lex_compare(a.sig, b.sig, tol);
  if (c != 0) return c;
  if (a.marks.size() != b.marks.size())
    return a.marks.size() < b.marks.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.marks.size(); ++i) {
    if (std::abs(a.marks[i] - b.marks[i]) <= kMarkTol) continue;
    return a.marks[i] < b.marks[i] ? -1 : 1;
  }
  if (std::abs(a.tau - b.tau) <= tol) return 0;
  return a.tau < b.tau ? -1 : 1;
}

}  // namespace

TorusInvariant canonical_torus(const TorusInvariant& inv) {
  std::vector<std::string> violations = validate_torus(inv);
  if (!violations.empty())
    throw ValidationError("canonical_torus: invalid invariant: " + violations[0]);

  double cmp_tol = 1e-6 * std::max(1.0, inv.fbar.scale());
  std::optional<TorusInvariant> best;
  std::optional<TorusKey> best_key;
  for (int orient = 0; orient < 2; ++orient) {
    TorusInvariant base = orient ? torus_flip(inv) : inv;
    std::vector<double> anchors = zero_positions(base.fbar);
    if (anchors.empty()) anchors.push_back(0.0);
    for (double y : anchors) {
      TorusInvariant cand = torus_shift(base, y);
      TorusKey key{sampled_signature(cand.fbar), cand.marks, cand.tau};
      if (!best || key_compare(key, *best_key, cmp_tol) > 0) {
        best = cand;
        best_key = key;
      }
    }
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Builders.

TorusInvariant build_torus(const FunctionProfile& profile, double t0, double tau,
                           const std::vector<double>& marks) {
  if (!profile.domain().is_periodic())
    throw ValidationError("torus invariant needs a periodic profile");
  double T = profile.domain().period;
  TorusInvariant inv;
  inv.t0 = t0;
  inv.fbar = profile.rescaled(T);  // mass-1 normalization
  inv.tau = wrap01(tau, t0);
  for (double m : marks) inv.marks.push_back(wrap01(m / T, 1.0));
  std::sort(inv.marks.begin(), inv.marks.end());
  std::vector<std::string> violations = validate_torus(inv);
  if (!violations.empty())
    throw ValidationError("build_torus: " + violations.front());
  return inv;
}

BottleInvariant1 build_bottle1(const FunctionProfile& profile, double t0,
                               const std::vector<double>& marks) {
  if (!profile.domain().is_periodic())
    throw ValidationError("bottle invariant needs a periodic profile");
  double T = profile.domain().period;
  BottleInvariant1 inv;
  inv.t0 = t0;
  inv.fbar = profile.rescaled(T);
  for (double m : marks) inv.marks.push_back(wrap01(m / T, 1.0));
  std::sort(inv.marks.begin(), inv.marks.end());
  std::vector<std::string> violations = validate_bottle1(inv);
  if (!violations.empty())
    throw ValidationError("build_bottle1: " + violations.front());
  return inv;
}

BottleInvariant2 build_bottle2(const FunctionProfile& profile, double t0,
                               const std::vector<double>& marks) {
  if (!profile.domain().is_periodic())
    throw ValidationError("bottle invariant needs a periodic profile");
  double T = profile.domain().period;  // = 2m
  double m_half = 0.5 * T;
  BottleInvariant2 inv;
  inv.t0 = t0;
  inv.fbar = profile.rescaled(m_half);  // period becomes 2
  for (double m : marks) {
    double u = wrap01(m / m_half, 2.0);
    inv.marks.push_back(u);
    if (u > kMarkTol && u < 1.0 - kMarkTol) inv.marks.push_back(2.0 - u);
  }
  std::sort(inv.marks.begin(), inv.marks.end());
  inv.marks.erase(std::unique(inv.marks.begin(), inv.marks.end(),
                              [](double a, double b) {
                                return std::abs(a - b) <= 1e-9;
                              }),
                  inv.marks.end());
  std::vector<std::string> violations = validate_bottle2(inv);
  if (!violations.empty())
    throw ValidationError("build_bottle2: " + violations.front());
  return inv;
}

// ---------------------------------------------------------------------------
// Serialization.

namespace {

std::string marks_str(const std::vector<double>& marks) {
  std::string s = "[";
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (i) s += ", ";
    s += fmt17(marks[i]);
  }
  return s + "]";
}

std::string serialize(const std::string& type, double t0,
                      std::optional<double> tau, const FunctionProfile& fbar,
                      const std::vector<double>& marks) {
  std::string s;
  s += "type = " + type + "\n";
  s += "t0 = " + fmt17(t0) + "\n";
  if (tau) s += "tau = " + fmt17(*tau) + "\n";
  s += "function = " + lks::to_string(fbar.expr()) + "\n";
  s += "domain = " + fbar.domain().str() + "\n";
  s += "marks = " + marks_str(marks) + "\n";
  return s;
}

}  // namespace

std::string serialize_torus(const TorusInvariant& inv) {
  return serialize("torus", inv.t0, inv.tau, inv.fbar, inv.marks);
}
std::string serialize_bottle1(const BottleInvariant1& inv) {
  return serialize("bottle1", inv.t0, std::nullopt, inv.fbar, inv.marks);
}
std::string serialize_bottle2(const BottleInvariant2& inv) {
  return serialize("bottle2", inv.t0, std::nullopt, inv.fbar, inv.marks);
}

AnyInvariant parse_invariant(const std::string& text) {
  std::istringstream in(text);
  std::string line, type, function_str, domain_str, marks_str;
  double t0 = 1.0, tau = 0.0;
  while (std::getline(in, line)) {
    std::string t = line;
    std::size_t b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    std::size_t e = t.find_last_not_of(" \t\r\n");
    t = t.substr(b, e - b + 1);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("invariant: expected key = value");
    std::string key = t.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    std::string val = t.substr(eq + 1);
    val.erase(0, val.find_first_not_of(" \t"));
    if (key == "type")
      type = val;
    else if (key == "t0")
      t0 = parse_real(val);
    else if (key == "tau")
      tau = parse_real(val);
    else if (key == "function")
      function_str = val;
    else if (key == "domain")
      domain_str = val;
    else if (key == "marks")
      marks_str = val;
    else
      throw ValidationError("invariant: unknown key '" + key + "'");
  }
  if (type.empty() || function_str.empty() || domain_str.empty())
    throw ValidationError("invariant: type, function and domain are required");

  double period = 1.0;
  if (domain_str.rfind("periodic:", 0) == 0)
    period = parse_real(domain_str.substr(9));
  else
    throw ValidationError("invariant: domain must be periodic");
  FunctionProfile fbar(parse(function_str), Domain::periodic(period));

  std::vector<double> marks;
  {
    std::string s = marks_str;
    for (char& c : s)
      if (c == '[' || c == ']' || c == ',') c = ' ';
    std::istringstream ms(s);
    double v;
    while (ms >> v) marks.push_back(v);
  }
  std::sort(marks.begin(), marks.end());

  AnyInvariant out;
  if (type == "torus") {
    out.type = AnyInvariant::Type::Torus;
    out.torus = TorusInvariant{t0, tau, fbar, marks};
  } else if (type == "elementary") {
    out.type = AnyInvariant::Type::Elementary;
    out.elementary = ElementaryInvariant{t0, tau, fbar, false};
  } else if (type == "bottle1") {
    out.type = AnyInvariant::Type::Bottle1;
    out.bottle1 = BottleInvariant1{t0, fbar, marks};
  } else if (type == "bottle2") {
    out.type = AnyInvariant::Type::Bottle2;
    out.bottle2 = BottleInvariant2{t0, fbar, marks};
  } else {
    throw ValidationError("invariant: unknown type '" + type + "'");
  }
  return out;
}

AnyInvariant load_invariant(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open invariant file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_invariant(ss.str());
}

}  // namespace lks
