#include "lks/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace lks {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootAbsTol = 1e-12;

double wrap_into(double x, double lo, double period) {
  double y = std::fmod(x - lo, period);
  if (y < 0) y += period;
  return lo + y;
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw ValidationError("interval domain needs a < b");
  Domain d;
  d.kind = Kind::Interval;
  d.a = a;
  d.b = b;
  return d;
}

Domain Domain::periodic(double T) {
  if (!(T > 0)) throw ValidationError("period must be positive");
  Domain d;
  d.kind = Kind::Periodic;
  d.period = T;
  return d;
}

std::string Domain::str() const {
  char buf[96];
  if (kind == Kind::Periodic) {
    std::snprintf(buf, sizeof buf, "periodic:%.17g", period);
  } else {
    std::snprintf(buf, sizeof buf, "interval:%.17g,%.17g", a, b);
  }
  return buf;
}

FunctionProfile::FunctionProfile(Expr f, Domain dom, double tol, int grid_n,
                                 double scan_radius)
    : expr_(std::move(f)),
      dom_(dom),
      tol_(tol),
      grid_n_(grid_n),
      scan_radius_(scan_radius) {
  if (!(tol_ > 0)) throw ValidationError("tol must be positive");
  if (grid_n_ < 16) throw ValidationError("grid_n too small");
  d1_ = differentiate(expr_);
  d2_ = differentiate(d1_);
  f_ = CompiledExpr(expr_);
  fp_ = CompiledExpr(d1_);
  fpp_ = CompiledExpr(d2_);

  double lo = scan_lo(), hi = scan_hi();
  double m = 0.0;
  for (int i = 0; i < 512; ++i) {
    double x = lo + (i + 0.5) * (hi - lo) / 512;
    m = std::max(m, std::abs(f_(x)));
  }
  scale_ = std::max(m, 1e-300);

  if (dom_.is_periodic()) {
    double tol_id = tol_ * std::max(1.0, scale_);
    for (int i = 0; i < 257; ++i) {
      double x = lo + (i + 0.37) * (hi - lo) / 257;
      if (std::abs(f_(x + dom_.period) - f_(x)) > tol_id)
        throw ValidationError("declared period fails validation at x=" +
                              std::to_string(x));
    }
  }
}

double FunctionProfile::scan_lo() const {
  if (dom_.is_periodic()) return 0.0;
  return std::isfinite(dom_.a) ? dom_.a : -scan_radius_;
}

double FunctionProfile::scan_hi() const {
  if (dom_.is_periodic()) return dom_.period;
  return std::isfinite(dom_.b) ? dom_.b : scan_radius_;
}

bool FunctionProfile::is_constant() const {
  double lo = scan_lo(), hi = scan_hi();
  double v0 = f_(lo + 0.5 * (hi - lo) / 257);
  double tol_id = tol_ * std::max(1.0, scale_);
  for (int i = 0; i < 257; ++i) {
    double x = lo + (i + 0.5) * (hi - lo) / 257;
    if (std::abs(f_(x) - v0) > tol_id) return false;
  }
  return true;
}

FunctionProfile FunctionProfile::translated(double shift) const {
  Domain d = dom_;
  if (!d.is_periodic()) {
    d.a = dom_.a - shift;
    d.b = dom_.b - shift;
  }
  return FunctionProfile(substitute_affine(expr_, 1.0, shift), d, tol_, grid_n_,
                         scan_radius_);
}

FunctionProfile FunctionProfile::mirrored() const {
  Domain d = dom_;
  if (!d.is_periodic()) {
    d.a = -dom_.b;
    d.b = -dom_.a;
  }
  return FunctionProfile(substitute_affine(expr_, -1.0, 0.0), d, tol_, grid_n_,
                         scan_radius_);
}

FunctionProfile FunctionProfile::rescaled(double a) const {
  if (a == 0) throw ValidationError("rescale factor must be nonzero");
  Domain d = dom_;
  if (d.is_periodic()) {
    d.period = dom_.period / std::abs(a);
  } else {
    double u = dom_.a / a, v = dom_.b / a;
    d.a = std::min(u, v);
    d.b = std::max(u, v);
  }
  Expr e = make_mul(make_const(1.0 / (a * a)), substitute_affine(expr_, a, 0.0));
  return FunctionProfile(e, d, tol_, grid_n_, scan_radius_);
}

// ---------------------------------------------------------------------------
// Config.

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_bound(const std::string& s) {
  std::string t = trim(s);
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  return parse_real(t);
}

}  // namespace

FunctionProfile parse_profile_config(const std::string& text) {
  std::istringstream in(text);
  std::string line, function_str, domain_str;
  double tol = 1e-9, scan_radius = 64.0;
  int grid_n = 4096;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "function")
      function_str = val;
    else if (key == "domain")
      domain_str = val;
    else if (key == "tol")
      tol = parse_real(val);
    else if (key == "grid_n")
      grid_n = static_cast<int>(parse_real(val));
    else if (key == "scan_radius")
      scan_radius = parse_real(val);
    else
      throw ValidationError("config: unknown key '" + key + "'");
  }
  if (function_str.empty()) throw ValidationError("config: missing 'function'");
  if (domain_str.empty()) throw ValidationError("config: missing 'domain'");

  Domain dom;
  if (domain_str.rfind("periodic:", 0) == 0) {
    dom = Domain::periodic(parse_real(domain_str.substr(9)));
  } else if (domain_str.rfind("interval:", 0) == 0) {
    std::string rest = domain_str.substr(9);
    std::size_t comma = rest.find(',');
    if (comma == std::string::npos)
      throw ValidationError("config: interval domain needs two bounds");
    dom = Domain::interval(parse_bound(rest.substr(0, comma)),
                           parse_bound(rest.substr(comma + 1)));
  } else {
    throw ValidationError("config: domain must be periodic:<T> or interval:<a>,<b>");
  }
  return FunctionProfile(parse(function_str), dom, tol, grid_n, scan_radius);
}

FunctionProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open profile config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile_config(ss.str());
}

// ---------------------------------------------------------------------------
// Zero set.

namespace {

double bisect_root(const FunctionProfile& p, double lo, double hi) {
  double flo = p.f(lo);
  for (int i = 0; i < 200 && hi - lo > kRootAbsTol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = p.f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0) != (fm < 0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Newton iteration on f' to land on a critical point of f near x.
std::optional<double> refine_critical(const FunctionProfile& p, double x,
                                      double lo, double hi) {
  double c = x;
  for (int i = 0; i < 60; ++i) {
    double d1 = p.fp(c), d2 = p.fpp(c);
    if (std::abs(d1) < 1e-15) break;
    if (d2 == 0.0) return std::nullopt;
    double step = d1 / d2;
    c -= step;
    if (c < lo || c > hi) return std::nullopt;
    if (std::abs(step) < kRootAbsTol) break;
  }
  return c;
}

Zero make_zero(const FunctionProfile& p, double x0) {
  Zero z;
  z.x0 = x0;
  z.lambda = p.fp(x0);
  z.kind = std::abs(z.lambda) > p.tol() ? Zero::Kind::Simple
                                        : Zero::Kind::Degenerate;
  return z;
}

}  // namespace

ZeroSetAnalysis analyze_zero_set(const FunctionProfile& p) {
  ZeroSetAnalysis out;
  const double lo = p.scan_lo(), hi = p.scan_hi();
  const int n = p.grid_n();
  const double h = (hi - lo) / n;
  const double ztol = p.tol() * std::max(1.0, p.scale());

  std::vector<double> xs(n + 1), fs(n + 1);
  for (int i = 0; i <= n; ++i) {
    xs[i] = lo + i * h;
    fs[i] = p.f(xs[i]);
  }

  // plateau runs: long stretches of |f| <= ztol
  std::vector<bool> in_plateau(n + 1, false);
  {
    int run_start = -1;
    for (int i = 0; i <= n + 0; ++i) {
      bool small = i <= n && std::abs(fs[i]) <= ztol;
      if (small && run_start < 0) run_start = i;
      if ((!small || i == n) && run_start >= 0) {
        int run_end = small ? i : i - 1;
        int len = run_end - run_start + 1;
        if (len >= 8 && len * h >= 0.01 * (hi - lo)) {
          out.plateaus.emplace_back(xs[run_start], xs[run_end]);
          for (int j = run_start; j <= run_end; ++j) in_plateau[j] = true;
        }
        run_start = -1;
      }
    }
  }

  std::vector<double> roots;
  // short runs of sub-tolerance samples collapse to one zero each
  {
    int run_start = -1;
    for (int i = 0; i <= n + 1; ++i) {
      bool small = i <= n && !in_plateau[i] && std::abs(fs[i]) <= ztol;
      if (small && run_start < 0) run_start = i;
      if (!small && run_start >= 0) {
        int run_end = i - 1;
        int lo_i = std::max(0, run_start - 1), hi_i = std::min(n, run_end + 1);
        bool sign_change = (fs[lo_i] < 0) != (fs[hi_i] < 0) &&
                           std::abs(fs[lo_i]) > ztol &&
                           std::abs(fs[hi_i]) > ztol;
        if (sign_change) {
          roots.push_back(bisect_root(p, xs[lo_i], xs[hi_i]));
        } else {
          // flat touch: land on the nearby critical point when possible
          double mid = 0.5 * (xs[run_start] + xs[run_end]);
          auto crit = refine_critical(p, mid, xs[lo_i] - h, xs[hi_i] + h);
          roots.push_back(crit && std::abs(p.f(*crit)) <= ztol ? *crit : mid);
        }
        run_start = -1;
      }
    }
  }
  // bracketed sign changes away from sub-tolerance samples
  for (int i = 0; i < n; ++i) {
    if (in_plateau[i] || in_plateau[i + 1]) continue;
    if (std::abs(fs[i]) <= ztol || std::abs(fs[i + 1]) <= ztol) continue;
    if ((fs[i] < 0) != (fs[i + 1] < 0))
      roots.push_back(bisect_root(p, xs[i], xs[i + 1]));
  }
  // local minima of |f| that dip to zero without a sign change
  for (int i = 1; i < n; ++i) {
    if (in_plateau[i]) continue;
    double a = std::abs(fs[i - 1]), b = std::abs(fs[i]), c = std::abs(fs[i + 1]);
    if (b <= a && b <= c && b > ztol && b <= 1e-3 * std::max(1.0, p.scale())) {
      auto crit = refine_critical(p, xs[i], xs[i - 1] - h, xs[i + 1] + h);
      if (crit && std::abs(p.f(*crit)) <= ztol) roots.push_back(*crit);
    }
  }

  std::sort(roots.begin(), roots.end());
  // dedupe; for periodic domains also identify the two window endpoints
  std::vector<double> uniq;
  for (double r : roots) {
    if (uniq.empty() || r - uniq.back() > 1e-9) uniq.push_back(r);
  }
  if (p.domain().is_periodic() && uniq.size() >= 2 &&
      (uniq.back() - uniq.front()) >= p.domain().period - 1e-9) {
    uniq.pop_back();
  }
  if (static_cast<int>(uniq.size()) > p.grid_n() / 8)
    throw NotFiniteTypeError("zero set too dense: profile is not of finite type");
  // zeros spaced near the grid resolution mean the scan cannot be trusted
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i)
    if (uniq[i + 1] - uniq[i] < 4 * h)
      throw NotFiniteTypeError(
          "zeros accumulate below the grid resolution; raise grid_n if the "
          "profile really is of finite type");

  for (double r : uniq) out.zeros.push_back(make_zero(p, r));
  return out;
}

std::vector<Zero> find_zeros(const FunctionProfile& p) {
  ZeroSetAnalysis a = analyze_zero_set(p);
  if (!a.plateaus.empty())
    throw ZeroPlateauError("f vanishes identically on a subinterval");
  return a.zeros;
}

double curvature(const FunctionProfile& p, double x) { return 0.5 * p.fpp(x); }

// ---------------------------------------------------------------------------
// Components of {f != 0}.

ComponentSet components(const FunctionProfile& p) {
  ZeroSetAnalysis za = analyze_zero_set(p);
  ComponentSet cs;
  cs.cyclic = p.domain().is_periodic();
  cs.period = cs.cyclic ? p.domain().period : 0.0;
  const double lo = p.scan_lo(), hi = p.scan_hi();
  const bool lo_inf = !cs.cyclic && !std::isfinite(p.domain().a);
  const bool hi_inf = !cs.cyclic && !std::isfinite(p.domain().b);

  struct Cut {
    double lo, hi;
  };
  std::vector<Cut> cuts;
  for (const Zero& z : za.zeros) cuts.push_back({z.x0, z.x0});
  for (auto& pl : za.plateaus) cuts.push_back({pl.first, pl.second});
  std::sort(cuts.begin(), cuts.end(),
            [](const Cut& a, const Cut& b) { return a.lo < b.lo; });

  auto push_comp = [&](double u, double v, bool touch_lo, bool touch_hi) {
    if (v - u <= 2e-9) return;
    Component c;
    c.lo = touch_lo && lo_inf ? -kInf : u;
    c.hi = touch_hi && hi_inf ? kInf : v;
    c.touches_lo_end = touch_lo;
    c.touches_hi_end = touch_hi;
    double probe = 0.5 * (u + v);
    double fv = p.f(probe);
    c.sign = fv > 0 ? 1 : -1;
    if (std::abs(fv) <= p.tol() * std::max(1.0, p.scale())) return;
    cs.comps.push_back(c);
  };

  if (cuts.empty()) {
    cs.elementary = true;
    push_comp(lo, hi, !cs.cyclic, !cs.cyclic);
    return cs;
  }

  if (cs.cyclic) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      double u = cuts[i].hi;
      double v = i + 1 < cuts.size() ? cuts[i + 1].lo : cuts.front().lo + cs.period;
      push_comp(u, v, false, false);
    }
  } else {
    push_comp(lo, cuts.front().lo, true, false);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      push_comp(cuts[i].hi, cuts[i + 1].lo, false, false);
    push_comp(cuts.back().hi, hi, false, true);
  }
  return cs;
}

// ---------------------------------------------------------------------------
// Contiguity graph.

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int ContiguityGraph::degree(int v) const {
  int d = 0;
  for (const GraphEdge& e : edges)
    if (e.comp_a == v || e.comp_b == v) ++d;
  return d;
}

ContiguityGraph contiguity_graph(const FunctionProfile& p) {
  ContiguityGraph g;
  g.comps = components(p);
  ZeroSetAnalysis za = analyze_zero_set(p);
  g.zeros = za.zeros;

  const int nv = g.vertex_count();
  auto comp_right_of = [&](double x) -> int {
    // component whose left endpoint is x (within tolerance); cyclic wrap
    for (int i = 0; i < nv; ++i) {
      double lo = g.comps.comps[i].lo;
      if (std::isfinite(lo) && std::abs(lo - x) <= 1e-7) return i;
      if (g.comps.cyclic &&
          std::abs(lo - (x + g.comps.period)) <= 1e-7)
        return i;
    }
    return -1;
  };
  auto comp_left_of = [&](double x) -> int {
    for (int i = 0; i < nv; ++i) {
      double hi = g.comps.comps[i].hi;
      if (std::isfinite(hi) && std::abs(hi - x) <= 1e-7) return i;
      if (g.comps.cyclic &&
          std::abs(hi - (x + g.comps.period)) <= 1e-7)
        return i;
    }
    return -1;
  };

  for (std::size_t zi = 0; zi < g.zeros.size(); ++zi) {
    const Zero& z = g.zeros[zi];
    if (!z.simple()) continue;
    int left = comp_left_of(z.x0);
    int right = comp_right_of(z.x0);
    if (left < 0 || right < 0) continue;  // zero borders a plateau or end
    g.edges.push_back({static_cast<int>(zi), left, right});
  }

  UnionFind uf(nv);
  for (const GraphEdge& e : g.edges) uf.unite(e.comp_a, e.comp_b);
  g.pi0.assign(nv, -1);
  int next = 0;
  for (int i = 0; i < nv; ++i) {
    int r = uf.find(i);
    if (g.pi0[r] < 0) g.pi0[r] = next++;
    g.pi0[i] = g.pi0[r];
  }
  g.pi0_count = next;
  return g;
}

// ---------------------------------------------------------------------------
// Symmetry of f.

namespace {

bool validate_period(const FunctionProfile& p, double q) {
  double lo = p.scan_lo(), hi = p.scan_hi();
  double tol_id = p.tol() * std::max(1.0, p.scale());
  for (int i = 0; i < 509; ++i) {
    double x = lo + (i + 0.618) * (hi - lo) / 509;
    if (std::abs(p.f(x + q) - p.f(x)) > tol_id) return false;
  }
  return true;
}

// |f(2c - x) - f(x)| <= tol on the grid, restricted to points where the
// mirrored point stays inside an interval domain.
bool validate_reflection(const FunctionProfile& p, double c) {
  double lo = p.scan_lo(), hi = p.scan_hi();
  double tol_id = p.tol() * std::max(1.0, p.scale());
  int tested = 0;
  for (int i = 0; i < 509; ++i) {
    double x = lo + (i + 0.618) * (hi - lo) / 509;
    double xm = 2 * c - x;
    if (!p.domain().is_periodic()) {
      if (xm <= lo || xm >= hi) continue;
    }
    ++tested;
    if (std::abs(p.f(xm) - p.f(x)) > tol_id) return false;
  }
  return tested >= 64;
}

// critical points of f in the scan window (grid sign changes of f')
std::vector<double> critical_points(const FunctionProfile& p) {
  std::vector<double> out;
  double lo = p.scan_lo(), hi = p.scan_hi();
  int n = std::min(p.grid_n(), 2048);
  double prev = p.fp(lo + 1e-12);
  for (int i = 1; i <= n; ++i) {
    double x = lo + i * (hi - lo) / n;
    double cur = p.fp(x);
    if ((prev < 0) != (cur < 0)) {
      double a = lo + (i - 1) * (hi - lo) / n, b = x;
      for (int it = 0; it < 80 && b - a > kRootAbsTol; ++it) {
        double m = 0.5 * (a + b);
        if ((p.fp(a) < 0) != (p.fp(m) < 0))
          b = m;
        else
          a = m;
      }
      out.push_back(0.5 * (a + b));
    }
    prev = cur;
  }
  return out;
}

// A reflection fixes a component of {f != 0} exactly when its center
// lies inside one, i.e. when f does not vanish at the center.
bool reflection_fixes_component(const FunctionProfile& p, double c) {
  return std::abs(p.f(c)) > p.tol() * std::max(1.0, p.scale());
}

}  // namespace

std::string SymmetryClass::label() const {
  std::string base;
  switch (case_) {
    case SymCase::C0: base = "(0)"; break;
    case SymCase::C1a: base = "(1a)"; break;
    case SymCase::C1b: base = "(1b)"; break;
    case SymCase::C2: base = "(2"; break;
    case SymCase::C3a: base = "(3a)"; break;
    case SymCase::C3b: base = "(3b)"; break;
    case SymCase::C3c: base = "(3c"; break;
  }
  if (case_ == SymCase::C2 || case_ == SymCase::C3c) {
    switch (subtype) {
      case SymSubtype::PairUnilateral: base += "^+u"; break;
      case SymSubtype::PairBilateral: base += "^+b"; break;
      case SymSubtype::Odd: base += "^-"; break;
      case SymSubtype::NotApplicable: break;
    }
    base += ")";
  }
  return base;
}

SymmetryClass detect_symmetry(const FunctionProfile& p) {
  SymmetryClass sc;
  ComponentSet cs = components(p);
  ZeroSetAnalysis za = analyze_zero_set(p);

  std::vector<double> centers_found;
  if (p.domain().is_periodic()) {
    // minimal period among divisors of the declared period
    double T = p.domain().period;
    double minimal = T;
    for (int m = 64; m >= 2; --m) {
      if (validate_period(p, T / m)) {
        minimal = T / m;
        break;
      }
    }
    sc.period = minimal;

    // reflection candidates: extrema and zero-pair midpoints, mod minimal/2
    std::vector<double> cand = critical_points(p);
    for (std::size_t i = 0; i < za.zeros.size(); ++i)
      for (std::size_t j = i; j < za.zeros.size(); ++j) {
        cand.push_back(0.5 * (za.zeros[i].x0 + za.zeros[j].x0));
        cand.push_back(0.5 * (za.zeros[i].x0 + za.zeros[j].x0) + 0.5 * minimal);
      }
    std::vector<double> reduced;
    for (double c : cand) {
      double r = wrap_into(c, 0.0, 0.5 * minimal);
      bool dup = false;
      for (double q : reduced)
        if (std::abs(q - r) <= 1e-8 ||
            std::abs(std::abs(q - r) - 0.5 * minimal) <= 1e-8)
          dup = true;
      if (!dup) reduced.push_back(r);
    }
    for (double c : reduced) {
      if (validate_reflection(p, c)) {
        centers_found.push_back(c);
        centers_found.push_back(c + 0.5 * minimal);
        break;
      }
    }

    if (centers_found.empty()) {
      sc.case_ = SymCase::C2;
    } else {
      int fixers = 0;
      for (double c : centers_found)
        if (reflection_fixes_component(p, c)) ++fixers;
      sc.case_ = fixers == 0   ? SymCase::C3a
                 : fixers == 1 ? SymCase::C3b
                               : SymCase::C3c;
      sc.reflection_centers = centers_found;
    }

    // parity subtype: components per minimal period and sign alternation
    if (cs.elementary || cs.comps.empty()) {
      sc.subtype = SymSubtype::NotApplicable;
    } else {
      double ratio = static_cast<double>(cs.comps.size()) * minimal / T;
      long per_period = std::lround(ratio);
      if (per_period <= 0) per_period = static_cast<long>(cs.comps.size());
      if (per_period % 2 == 1) {
        sc.subtype = SymSubtype::Odd;
      } else {
        bool alternating = true;
        int n = static_cast<int>(cs.comps.size());
        for (int i = 0; i < n; ++i)
          if (cs.comps[i].sign == cs.comps[(i + 1) % n].sign) alternating = false;
        sc.subtype = alternating ? SymSubtype::PairUnilateral
                                 : SymSubtype::PairBilateral;
      }
    }
    return sc;
  }

  // interval domain: reflections only
  std::vector<double> cand;
  bool both_finite = std::isfinite(p.domain().a) && std::isfinite(p.domain().b);
  bool both_infinite = !std::isfinite(p.domain().a) && !std::isfinite(p.domain().b);
  if (both_finite) {
    cand.push_back(0.5 * (p.domain().a + p.domain().b));
  } else if (both_infinite) {
    auto crit = critical_points(p);
    cand.insert(cand.end(), crit.begin(), crit.end());
    for (std::size_t i = 0; i < za.zeros.size(); ++i)
      for (std::size_t j = i; j < za.zeros.size(); ++j)
        cand.push_back(0.5 * (za.zeros[i].x0 + za.zeros[j].x0));
  }
  for (double c : cand) {
    if (validate_reflection(p, c)) {
      centers_found.push_back(c);
      break;
    }
  }
  if (centers_found.empty()) {
    sc.case_ = SymCase::C0;
  } else {
    sc.reflection_centers = centers_found;
    sc.case_ = reflection_fixes_component(p, centers_found[0]) ? SymCase::C1b
                                                               : SymCase::C1a;
  }
  sc.subtype = SymSubtype::NotApplicable;
  return sc;
}

// ---------------------------------------------------------------------------
// Canonical representative of the translation/flip class.

std::vector<double> sampled_signature(const FunctionProfile& p, int n) {
  std::vector<double> sig(n);
  double lo = p.scan_lo(), hi = p.scan_hi();
  for (int i = 0; i < n; ++i) sig[i] = p.f(lo + (i + 0.5) * (hi - lo) / n);
  return sig;
}

int lex_compare(const std::vector<double>& a, const std::vector<double>& b,
                double tol) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i] - b[i]) <= tol) continue;
    return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

namespace {

double anchor_shift(const FunctionProfile& p) {
  ZeroSetAnalysis za = analyze_zero_set(p);
  if (!za.zeros.empty()) return za.zeros.front().x0;
  // no zeros: use the argmax of f
  double lo = p.scan_lo(), hi = p.scan_hi();
  int n = p.grid_n();
  double best_x = lo, best = -kInf;
  for (int i = 0; i <= n; ++i) {
    double x = lo + i * (hi - lo) / n;
    double v = p.f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  for (double c : critical_points(p))
    if (p.f(c) > best) {
      best = p.f(c);
      best_x = c;
    }
  return best_x;
}

FunctionProfile shifted_to_anchor(const FunctionProfile& p) {
  double b = anchor_shift(p);
  if (std::abs(b) <= p.tol()) return p;
  return p.translated(b);
}

}  // namespace

FunctionProfile canonical_translate(const FunctionProfile& p) {
  if (p.is_constant())
    throw ValidationError("canonical form needs a non-constant profile");
  FunctionProfile fwd = shifted_to_anchor(p);
  FunctionProfile rev = shifted_to_anchor(fwd.mirrored());
  double cmp_tol = 1e-6 * std::max(1.0, p.scale());
  // orientation with the greater signature wins (positive lobe leads)
  int c = lex_compare(sampled_signature(fwd), sampled_signature(rev), cmp_tol);
  return c >= 0 ? fwd : rev;
}

bool equivalent_profiles_affine(const FunctionProfile& f,
                                const FunctionProfile& g) {
  std::vector<Zero> zf = find_zeros(f), zg = find_zeros(g);
  if (zf.size() < 2 || zg.size() < 2) {
    throw ValidationError("affine equivalence search needs two zeros on each side");
  }
  double sg = zg[1].x0 - zg[0].x0;
  double cmp_tol = 1e-6;
  for (int mirror = 0; mirror < 2; ++mirror) {
    FunctionProfile base = mirror ? f.mirrored() : f;
    std::vector<Zero> zb = find_zeros(base);
    for (std::size_t i = 0; i + 1 < zb.size(); ++i) {
      double a = (zb[i + 1].x0 - zb[i].x0) / sg;
      if (!(a > 0) || !std::isfinite(a)) continue;
      // scale then align the i-th zero of base with the 0-th of g
      FunctionProfile scaled = base.rescaled(a);
      std::vector<Zero> zs = find_zeros(scaled);
      for (const Zero& anchor : zs) {
        double shift = anchor.x0 - zg[0].x0;
        FunctionProfile candidate = scaled.translated(shift);
        // compare on g's scan window
        bool ok = true;
        double lo = g.scan_lo(), hi = g.scan_hi();
        double tol_id = cmp_tol * std::max(1.0, g.scale());
        for (int k = 0; k < 257 && ok; ++k) {
          double x = lo + (k + 0.5) * (hi - lo) / 257;
          if (std::abs(candidate.f(x) - g.f(x)) > tol_id) ok = false;
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

}  // namespace lks
