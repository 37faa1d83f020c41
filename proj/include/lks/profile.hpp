#pragma once

// Profile function analysis for the metric 2dxdy + f(x)dy^2: zero set,
// signed components of {f != 0}, contiguity graph, symmetry group of f
// and translation/flip canonical form.

#include <optional>
#include <string>
#include <vector>

#include "lks/expr.hpp"

namespace lks {

struct Domain {
  enum class Kind { Interval, Periodic };
  Kind kind = Kind::Periodic;
  double a = 0.0, b = 0.0;  // Interval: open (a,b), +-inf allowed
  double period = 0.0;      // Periodic: T > 0

  static Domain interval(double a, double b);
  static Domain periodic(double T);
  bool is_periodic() const { return kind == Kind::Periodic; }
  std::string str() const;
};

class FunctionProfile {
 public:
  FunctionProfile() = default;
  FunctionProfile(Expr f, Domain dom, double tol = 1e-9, int grid_n = 4096,
                  double scan_radius = 64.0);

  const Expr& expr() const { return expr_; }
  const Expr& d1() const { return d1_; }
  const Expr& d2() const { return d2_; }
  const Domain& domain() const { return dom_; }
  double tol() const { return tol_; }
  int grid_n() const { return grid_n_; }

  double f(double x) const { return f_(x); }
  double fp(double x) const { return fp_(x); }
  double fpp(double x) const { return fpp_(x); }

  // Scan window: the fundamental period for periodic domains, the
  // interval clipped to +-scan_radius for unbounded ones.
  double scan_lo() const;
  double scan_hi() const;

  // max |f| over the scan grid (used to scale identity tolerances).
  double scale() const { return scale_; }

  bool is_constant() const;

  // New profile with f replaced by f(x + shift).
  FunctionProfile translated(double shift) const;
  // New profile with f replaced by f(-x) (domain mirrored for intervals).
  FunctionProfile mirrored() const;
  // New profile a^-2 f(a x), domain rescaled accordingly.
  FunctionProfile rescaled(double a) const;

 private:
  Expr expr_, d1_, d2_;
  Domain dom_;
  double tol_ = 1e-9;
  int grid_n_ = 4096;
  double scan_radius_ = 64.0;
  double scale_ = 1.0;
  CompiledExpr f_, fp_, fpp_;
};

// Profile config: UTF-8 text, `key = value` per line.  Keys: function,
// domain (periodic:<T> | interval:<a>,<b>), tol, grid_n, scan_radius.
// Numeric values may be constant expressions ("pi", "2*pi", ...).
FunctionProfile parse_profile_config(const std::string& text);
FunctionProfile load_profile(const std::string& path);

struct Zero {
  double x0 = 0.0;
  enum class Kind { Simple, Degenerate } kind = Kind::Simple;
  double lambda = 0.0;  // f'(x0)
  bool simple() const { return kind == Kind::Simple; }
};

// Full zero-set structure of f on the scan window; plateaus are maximal
// subintervals where f vanishes identically.
struct ZeroSetAnalysis {
  std::vector<Zero> zeros;                      // sorted
  std::vector<std::pair<double, double>> plateaus;
};

ZeroSetAnalysis analyze_zero_set(const FunctionProfile& p);

// Sorted zeros; throws ZeroPlateauError when f vanishes on a subinterval
// and NotFiniteTypeError when zeros accumulate beyond the grid resolution.
std::vector<Zero> find_zeros(const FunctionProfile& p);

// Curvature of the metric 2dxdy + f(x)dy^2 at x, equal to f''(x)/2.
double curvature(const FunctionProfile& p, double x);

struct Component {
  double lo = 0.0, hi = 0.0;
  int sign = 0;  // sign of f on the interior
  bool touches_lo_end = false, touches_hi_end = false;
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

struct ComponentSet {
  std::vector<Component> comps;  // ordered left to right
  bool cyclic = false;           // periodic domain: last is adjacent to first
  bool elementary = false;       // f has no zeros
  double period = 0.0;           // fundamental period when cyclic
};

ComponentSet components(const FunctionProfile& p);

struct GraphEdge {
  int zero_index;  // index into zeros
  int comp_a, comp_b;
};

// Contiguity graph: vertices are components of {f != 0}; each simple zero
// lying strictly between two components contributes one edge.
struct ContiguityGraph {
  ComponentSet comps;
  std::vector<Zero> zeros;
  std::vector<GraphEdge> edges;
  std::vector<int> pi0;  // vertex -> connected-component id (0-based, dense)
  int pi0_count = 0;
  int vertex_count() const { return static_cast<int>(comps.comps.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int v) const;
};

ContiguityGraph contiguity_graph(const FunctionProfile& p);

enum class SymCase { C0, C1a, C1b, C2, C3a, C3b, C3c };
enum class SymSubtype { PairUnilateral, PairBilateral, Odd, NotApplicable };

struct SymmetryClass {
  SymCase case_ = SymCase::C0;
  SymSubtype subtype = SymSubtype::NotApplicable;
  std::optional<double> period;            // minimal period
  std::vector<double> reflection_centers;  // representatives (<= 2 per period)
  std::string label() const;               // "(3c^+u)" style
};

SymmetryClass detect_symmetry(const FunctionProfile& p);

// Representative of the translation/flip class of f: smallest zero moved
// to 0 (argmax of f when f has no zeros); orientation chosen by the
// lexicographically smaller sampled signature.  Idempotent.
FunctionProfile canonical_translate(const FunctionProfile& p);

// Decides whether g lies in the orbit f(x) -> a^-2 f(ax+b) of f (full
// affine action, one-parameter search over scale candidates derived from
// zero spacings).  Both profiles must have at least two zeros.
bool equivalent_profiles_affine(const FunctionProfile& f,
                                const FunctionProfile& g);

// Sampled values of f on an n-point uniform grid over the scan window.
std::vector<double> sampled_signature(const FunctionProfile& p, int n = 1024);

// Lexicographic comparison where |a-b| <= tol counts as equal.
int lex_compare(const std::vector<double>& a, const std::vector<double>& b,
                double tol);

}  // namespace lks
