#pragma once

// Combinatorial/metric model of the universal extension attached to f:
// square decomposition of {f != 0}, the leaf space of the Killing
// foliation, completeness of light leaves, saddle charts, the transverse
// affine structure and its holonomy.

#include <functional>
#include <optional>
#include <vector>

#include "lks/profile.hpp"

namespace lks {

enum class EndKind { Saddle, SourceSink, Boundary };

struct Square {
  double x_left = 0.0, x_right = 0.0;
  double width() const { return x_right - x_left; }
  EndKind left_end = EndKind::Saddle, right_end = EndKind::Saddle;
  int component = 0;  // index into the component set
};

// Component touching a domain end; realized as a Reeb-type band.
struct BoundaryBand {
  double width = 0.0;  // may be +inf
  bool at_lower_end = false;
  int component = 0;
};

struct SquareSet {
  std::vector<Square> squares;
  std::vector<BoundaryBand> bands;
};

SquareSet squares(const FunctionProfile& p);

// Leaf space of the Killing foliation: metric segments with doubled or
// plain boundaries, glued at junctions sitting over the zeros of f.
struct LeafSegment {
  enum class Kind { DoubleBoundary, HalfOpenDouble, Plain } kind;
  double length = 0.0;  // may be +inf for half-open segments
  int left_junction = -1, right_junction = -1;  // -1: domain end
};

struct LeafJunction {
  enum class Kind {
    SaddleCycle,          // simple zero: cycle of 4 branch points
    Contact,              // degenerate zero without sign change
    SourceSinkAtInfinity  // degenerate zero with sign change
  } kind;
  double x0 = 0.0;
  int branch_points = 0;  // 4 for saddle cycles
};

struct LeafSpaceModel {
  std::vector<LeafSegment> segments;
  std::vector<LeafJunction> junctions;
  bool cyclic = false;
  double total_length = 0.0;  // finite part; one period for cyclic domains
};

LeafSpaceModel leaf_space(const FunctionProfile& p);

struct LeafCompleteness {
  bool complete = false;
  int complete_side = 0;  // -1: the y<0 end is complete, +1: the y>0 end
};

// Complete iff the zero is degenerate; otherwise semi-complete with the
// complete end on the side y<0 when lambda > 0.
LeafCompleteness light_leaf_complete(const FunctionProfile& p, const Zero& z);

// Factorization f(x0 + x) = lambda * x * g(x) near a simple zero, with
// g(0) = 1, and h(x) = (g(x) - 1/g(x))/x extended through 0.
class SaddleChart {
 public:
  SaddleChart(const FunctionProfile& p, const Zero& z);
  double lambda() const { return lambda_; }
  double g(double x) const;
  double h(double x) const;
  // metric coefficients alpha = v^2 h(uv)/lambda, beta = -(g+1/g)/lambda,
  // gamma = u^2 h(uv)/lambda
  double alpha(double u, double v) const;
  double beta(double u, double v) const;
  double gamma(double u, double v) const;

 private:
  FunctionProfile profile_;
  double x0_, lambda_, gp0_, gpp0_;
};

// Transverse affine parameter around a simple zero: phi solves
// phi' = -(f' - lambda)/f * phi on the domino, phi(x0) = 1, and
// xi(x,y) = phi(x) e^{lambda y} f(x) / lambda.
class AffineStructure {
 public:
  AffineStructure(const FunctionProfile& p, const Zero& z);
  double lambda() const { return lambda_; }
  double x0() const { return x0_; }
  double domino_lo() const { return lo_; }
  double domino_hi() const { return hi_; }
  double phi(double x) const;       // interpolated sample table
  double phi_prime(double x) const;
  double xi(double x, double y) const;
  // forward/backward coordinate change between (x, y) and (u, v > 0)
  std::pair<double, double> to_uv(double x, double y) const;
  std::pair<double, double> from_uv(double u, double v) const;

 private:
  FunctionProfile profile_;
  double x0_, lambda_, lo_, hi_;
  std::vector<double> xs_, ps_, dps_;  // sample table with derivatives
  double rhs_q(double x) const;        // (f'(x)-lambda)/f(x), series near x0
};

AffineStructure solve_affine_ode(const FunctionProfile& p, const Zero& z);

// Holonomy of the transverse projective structure of the cylinder glued
// from two reflections with axis parameters xi+ and xi-.
double cylinder_holonomy(double xi_plus, double xi_minus);

// A quasi-saddle completes to a saddle iff |xi+| == |xi-| (equivalently
// the holonomy is the identity).
bool quasi_saddle_completable(double xi_plus, double xi_minus, double tol = 1e-9);

// The eight affine-parameter evaluations determining the holonomy ratio
// around a quasi-saddle.
struct QuasiSaddleData {
  double xi1_g1, xi2_g1, xi3_g3, xi4_g3;  // numerator factors
  double xi1_g4, xi2_g2, xi3_g2, xi4_g4;  // denominator factors
};

double quasi_saddle_holonomy(const QuasiSaddleData& d);

// Flow shift produced by developing once around the quasi-saddle.
double quasi_saddle_flow_shift(const QuasiSaddleData& d, double lambda);

}  // namespace lks
