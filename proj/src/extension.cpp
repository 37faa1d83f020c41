#include "lks/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rk45.hpp"

namespace lks {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int zero_index_at(const std::vector<Zero>& zeros, double x, double tol) {
  for (std::size_t i = 0; i < zeros.size(); ++i)
    if (std::abs(zeros[i].x0 - x) <= tol) return static_cast<int>(i);
  return -1;
}

}  // namespace

SquareSet squares(const FunctionProfile& p) {
  SquareSet out;
  ComponentSet cs = components(p);
  ZeroSetAnalysis za = analyze_zero_set(p);
  double T = cs.period;

  auto end_kind = [&](double x) -> std::optional<EndKind> {
    int zi = zero_index_at(za.zeros, x, 1e-7);
    if (zi < 0 && cs.cyclic) {
      zi = zero_index_at(za.zeros, x - T, 1e-7);
      if (zi < 0) zi = zero_index_at(za.zeros, x + T, 1e-7);
    }
    if (zi < 0) return std::nullopt;
    return za.zeros[zi].simple() ? EndKind::Saddle : EndKind::SourceSink;
  };

  for (int i = 0; i < static_cast<int>(cs.comps.size()); ++i) {
    const Component& c = cs.comps[i];
    if (cs.elementary) break;
    if (c.touches_lo_end || c.touches_hi_end) {
      BoundaryBand b;
      b.component = i;
      b.at_lower_end = c.touches_lo_end;
      b.width = (std::isfinite(c.lo) && std::isfinite(c.hi)) ? c.width() : kInf;
      out.bands.push_back(b);
      continue;
    }
    Square s;
    s.component = i;
    s.x_left = c.lo;
    s.x_right = c.hi;
    auto lk = end_kind(c.lo), rk = end_kind(c.hi);
    if (!lk || !rk)
      throw ValidationError("square end does not sit on a detected zero");
    s.left_end = *lk;
    s.right_end = *rk;
    out.squares.push_back(s);
  }
  return out;
}

LeafSpaceModel leaf_space(const FunctionProfile& p) {
  LeafSpaceModel m;
  ComponentSet cs = components(p);
  ZeroSetAnalysis za = analyze_zero_set(p);
  m.cyclic = cs.cyclic;

  // probe spacing for the sign test on either side of a zero
  double span = p.scan_hi() - p.scan_lo();
  double delta = span / (4.0 * p.grid_n());

  for (const Zero& z : za.zeros) {
    LeafJunction j;
    j.x0 = z.x0;
    if (z.simple()) {
      j.kind = LeafJunction::Kind::SaddleCycle;
      j.branch_points = 4;
    } else {
      double l = p.f(z.x0 - delta), r = p.f(z.x0 + delta);
      j.kind = (l < 0) != (r < 0) ? LeafJunction::Kind::SourceSinkAtInfinity
                                  : LeafJunction::Kind::Contact;
    }
    m.junctions.push_back(j);
  }

  auto junction_at = [&](double x) -> int {
    int zi = zero_index_at(za.zeros, x, 1e-7);
    if (zi < 0 && cs.cyclic) {
      zi = zero_index_at(za.zeros, x - cs.period, 1e-7);
      if (zi < 0) zi = zero_index_at(za.zeros, x + cs.period, 1e-7);
    }
    return zi;
  };

  if (cs.elementary) {
    LeafSegment s;
    s.kind = LeafSegment::Kind::Plain;
    s.length = cs.comps.empty() ? 0.0
               : std::isfinite(cs.comps[0].width()) ? cs.comps[0].width()
                                                    : kInf;
    m.segments.push_back(s);
  } else {
    for (const Component& c : cs.comps) {
      LeafSegment s;
      if (c.touches_lo_end || c.touches_hi_end) {
        s.kind = LeafSegment::Kind::HalfOpenDouble;
        s.length =
            (std::isfinite(c.lo) && std::isfinite(c.hi)) ? c.width() : kInf;
        if (!c.touches_lo_end) s.left_junction = junction_at(c.lo);
        if (!c.touches_hi_end) s.right_junction = junction_at(c.hi);
      } else {
        s.kind = LeafSegment::Kind::DoubleBoundary;
        s.length = c.width();
        s.left_junction = junction_at(c.lo);
        s.right_junction = junction_at(c.hi);
      }
      m.segments.push_back(s);
    }
    for (auto& pl : za.plateaus) {
      LeafSegment s;
      s.kind = LeafSegment::Kind::Plain;
      s.length = pl.second - pl.first;
      m.segments.push_back(s);
    }
  }

  m.total_length = 0.0;
  for (const LeafSegment& s : m.segments)
    if (std::isfinite(s.length)) m.total_length += s.length;
  return m;
}

LeafCompleteness light_leaf_complete(const FunctionProfile& p, const Zero& z) {
  (void)p;
  LeafCompleteness out;
  if (!z.simple()) {
    out.complete = true;
    return out;
  }
  out.complete = false;
  out.complete_side = z.lambda > 0 ? -1 : +1;
  return out;
}

// ---------------------------------------------------------------------------
// Saddle chart.

SaddleChart::SaddleChart(const FunctionProfile& p, const Zero& z)
    : profile_(p), x0_(z.x0), lambda_(z.lambda) {
  if (!z.simple())
    throw DegenerateZeroError("saddle chart needs a simple zero");
  double fpp = p.fpp(x0_);
  Expr d3 = differentiate(p.d2());
  double fppp = eval(d3, x0_);
  gp0_ = fpp / (2 * lambda_);        // g'(0)
  gpp0_ = fppp / (6 * lambda_) * 2;  // g''(0) = f'''(x0)/(3 lambda)
}

double SaddleChart::g(double x) const {
  if (std::abs(x) < 1e-6) return 1.0 + gp0_ * x + 0.5 * gpp0_ * x * x;
  return profile_.f(x0_ + x) / (lambda_ * x);
}

double SaddleChart::h(double x) const {
  if (std::abs(x) < 1e-4) {
    // h = (g - 1/g)/x = 2 g'(0) + (g''(0) - g'(0)^2) x + O(x^2)
    return 2 * gp0_ + (gpp0_ - gp0_ * gp0_) * x;
  }
  double gv = g(x);
  return (gv - 1.0 / gv) / x;
}

double SaddleChart::alpha(double u, double v) const {
  return v * v * h(u * v) / lambda_;
}
double SaddleChart::beta(double u, double v) const {
  double gv = g(u * v);
  return -(gv + 1.0 / gv) / lambda_;
}
double SaddleChart::gamma(double u, double v) const {
  return u * u * h(u * v) / lambda_;
}

// ---------------------------------------------------------------------------
// Transverse affine structure.

AffineStructure::AffineStructure(const FunctionProfile& p, const Zero& z)
    : profile_(p), x0_(z.x0), lambda_(z.lambda) {
  if (!z.simple())
    throw DegenerateZeroError("affine structure needs a simple zero");

  // domino: the open interval around x0 free of other zeros
  ZeroSetAnalysis za = analyze_zero_set(p);
  double prev = -kInf, next = kInf;
  for (const Zero& w : za.zeros) {
    if (w.x0 < x0_ - 1e-9) prev = std::max(prev, w.x0);
    if (w.x0 > x0_ + 1e-9) next = std::min(next, w.x0);
  }
  if (p.domain().is_periodic()) {
    double T = p.domain().period;
    for (const Zero& w : za.zeros) {
      if (w.x0 - T < x0_ - 1e-9) prev = std::max(prev, w.x0 - T);
      if (w.x0 + T > x0_ + 1e-9) next = std::min(next, w.x0 + T);
    }
  } else {
    prev = std::max(prev, p.domain().a);
    next = std::min(next, p.domain().b);
  }
  double left = std::isfinite(prev) ? x0_ - 0.995 * (x0_ - prev)
                                    : x0_ - 40.0;
  double right = std::isfinite(next) ? x0_ + 0.995 * (next - x0_)
                                     : x0_ + 40.0;
  lo_ = left;
  hi_ = right;

  // integrate phi' = -q phi outward from x0, phi(x0) = 1
  xs_.push_back(x0_);
  ps_.push_back(1.0);
  dps_.push_back(-rhs_q(x0_) * 1.0);
  auto rhs = [this](double x, detail::State<1> y) -> detail::State<1> {
    return {-rhs_q(x) * y[0]};
  };
  auto run = [&](double target) {
    detail::integrate_rk45<1>(rhs, x0_, {1.0}, target, 1e-12, 1e-14,
                              [&](const detail::StepRecord<1>& r) {
                                xs_.push_back(r.t1);
                                ps_.push_back(r.y1[0]);
                                dps_.push_back(r.f1[0]);
                                return true;
                              });
  };
  run(right);
  run(left);
  // sort the merged table
  std::vector<std::size_t> idx(xs_.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return xs_[a] < xs_[b]; });
  std::vector<double> xs2, ps2, dps2;
  for (std::size_t i : idx) {
    if (!xs2.empty() && xs_[i] - xs2.back() < 1e-15) continue;
    xs2.push_back(xs_[i]);
    ps2.push_back(ps_[i]);
    dps2.push_back(dps_[i]);
  }
  xs_ = std::move(xs2);
  ps_ = std::move(ps2);
  dps_ = std::move(dps2);
}

double AffineStructure::rhs_q(double x) const {
  double dx = x - x0_;
  if (std::abs(dx) < 1e-6) {
    double fpp = profile_.fpp(x0_);
    Expr d3 = differentiate(profile_.d2());
    double fppp = eval(d3, x0_);
    // (f'-lambda)/f = f''/lambda + (f'''/(2 lambda) - f''^2/(2 lambda^2)) dx
    return fpp / lambda_ +
           (fppp / (2 * lambda_) - fpp * fpp / (2 * lambda_ * lambda_)) * dx;
  }
  return (profile_.fp(x) - lambda_) / profile_.f(x);
}

double AffineStructure::phi(double x) const {
  if (x < lo_ - 1e-9 || x > hi_ + 1e-9)
    throw EvalError("phi sampled outside the domino");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = it == xs_.begin() ? 0 : (it - xs_.begin()) - 1;
  if (i + 1 >= xs_.size()) i = xs_.size() - 2;
  double h = xs_[i + 1] - xs_[i];
  double s = (x - xs_[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  return h00 * ps_[i] + h10 * h * dps_[i] + h01 * ps_[i + 1] +
         h11 * h * dps_[i + 1];
}

double AffineStructure::phi_prime(double x) const { return -rhs_q(x) * phi(x); }

double AffineStructure::xi(double x, double y) const {
  return phi(x) * std::exp(lambda_ * y) * profile_.f(x) / lambda_;
}

std::pair<double, double> AffineStructure::to_uv(double x, double y) const {
  double dx = x - x0_;
  double gv = std::abs(dx) < 1e-9 ? 1.0 : profile_.f(x) / (lambda_ * dx);
  double pg = phi(x) * gv;
  if (!(pg > 0)) throw EvalError("phi*g must stay positive on the domino");
  double u = dx * std::sqrt(pg) * std::exp(0.5 * lambda_ * y);
  double v = std::exp(-0.5 * lambda_ * y) / std::sqrt(pg);
  return {u, v};
}

std::pair<double, double> AffineStructure::from_uv(double u, double v) const {
  double dx = u * v;
  double x = x0_ + dx;
  double gv = std::abs(dx) < 1e-9 ? 1.0 : profile_.f(x) / (lambda_ * dx);
  double y = -std::log(v * v * phi(x) * gv) / lambda_;
  return {x, y};
}

AffineStructure solve_affine_ode(const FunctionProfile& p, const Zero& z) {
  return AffineStructure(p, z);
}

// ---------------------------------------------------------------------------
// Holonomy.

double cylinder_holonomy(double xi_plus, double xi_minus) {
  if (xi_plus == 0 || xi_minus == 0)
    throw ValidationError("reflection axis parameters must be nonzero");
  double r = xi_plus / xi_minus;
  return r * r;
}

bool quasi_saddle_completable(double xi_plus, double xi_minus, double tol) {
  if (xi_plus == 0 || xi_minus == 0)
    throw ValidationError("reflection axis parameters must be nonzero");
  double scale = std::max({1.0, std::abs(xi_plus), std::abs(xi_minus)});
  return std::abs(std::abs(xi_plus) - std::abs(xi_minus)) <= tol * scale;
}

double quasi_saddle_holonomy(const QuasiSaddleData& d) {
  double den = d.xi1_g4 * d.xi2_g2 * d.xi3_g2 * d.xi4_g4;
  if (den == 0) throw ValidationError("holonomy denominator vanishes");
  return (d.xi1_g1 * d.xi2_g1 * d.xi3_g3 * d.xi4_g3) / den;
}

double quasi_saddle_flow_shift(const QuasiSaddleData& d, double lambda) {
  if (lambda == 0) throw DegenerateZeroError("flow shift needs lambda != 0");
  return std::log(quasi_saddle_holonomy(d)) / lambda;
}

}  // namespace lks
