#include "lks/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lks/classify.hpp"
#include "lks/extension.hpp"
#include "lks/geodesics.hpp"
#include "lks/isogroup.hpp"
#include "lks/output.hpp"
#include "lks/signseq.hpp"

namespace lks {

namespace {

std::vector<double> parse_marks(const std::string& spec) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(spec);
  while (std::getline(in, cur, ',')) {
    if (cur.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_real(cur));
  }
  return out;
}

const char* kind_str(Zero::Kind k) {
  return k == Zero::Kind::Simple ? "simple" : "degenerate";
}

const char* end_str(EndKind k) {
  switch (k) {
    case EndKind::Saddle: return "saddle";
    case EndKind::SourceSink: return "source_sink";
    case EndKind::Boundary: return "boundary";
  }
  return "";
}

const char* seg_str(LeafSegment::Kind k) {
  switch (k) {
    case LeafSegment::Kind::DoubleBoundary: return "double_boundary";
    case LeafSegment::Kind::HalfOpenDouble: return "half_open_double";
    case LeafSegment::Kind::Plain: return "plain";
  }
  return "";
}

const char* junction_str(LeafJunction::Kind k) {
  switch (k) {
    case LeafJunction::Kind::SaddleCycle: return "saddle_cycle";
    case LeafJunction::Kind::Contact: return "contact";
    case LeafJunction::Kind::SourceSinkAtInfinity: return "source_sink_at_infinity";
  }
  return "";
}

CaseData case_from_label(const std::string& label, int k, int l) {
  CaseData cd;
  if (label == "(0)") {
    cd.case_ = SymCase::C0;
  } else if (label == "(1a)") {
    cd.case_ = SymCase::C1a;
  } else if (label == "(1b)") {
    cd.case_ = SymCase::C1b;
  } else if (label == "(2^+u)") {
    cd.case_ = SymCase::C2;
    cd.subtype = SymSubtype::PairUnilateral;
  } else if (label == "(2^+b)") {
    cd.case_ = SymCase::C2;
    cd.subtype = SymSubtype::PairBilateral;
  } else if (label == "(2^-)") {
    cd.case_ = SymCase::C2;
    cd.subtype = SymSubtype::Odd;
  } else if (label == "(3a)") {
    cd.case_ = SymCase::C3a;
  } else if (label == "(3b)") {
    cd.case_ = SymCase::C3b;
  } else if (label == "(3c^+u)") {
    cd.case_ = SymCase::C3c;
    cd.subtype = SymSubtype::PairUnilateral;
  } else if (label == "(3c^+b)") {
    cd.case_ = SymCase::C3c;
    cd.subtype = SymSubtype::PairBilateral;
  } else {
    throw ValidationError("unknown case label '" + label + "'");
  }
  cd.k = k;
  cd.ell = l;
  cd.has_saddles = k > 0;
  cd.has_elliptic_products = cd.has_saddles || cd.case_ == SymCase::C1b ||
                             cd.case_ == SymCase::C3b || cd.case_ == SymCase::C3c;
  return cd;
}

std::string quotients_without_elliptic_products(Doc& doc, const CaseData& cd) {
  // minimal index 2; the quotient is unique except in case (2) where two
  // subgroups realize it
  doc.kv("count", cd.case_ == SymCase::C2 ? 2 : 1);
  OrbifoldData o = orbifold(cd);
  doc.kv("surface", o.surface_str());
  doc.kv("p_int", o.p_int);
  doc.kv("p_bd", o.p_bd);
  return doc.str();
}

// ---------------------------------------------------------------------------
// Commands.  Each returns the structured document.

std::string do_analyze(const FunctionProfile& p) {
  Doc doc;
  doc.section("analyze");
  doc.push();
  doc.section("profile");
  doc.push();
  doc.kv("function", to_string(p.expr()));
  doc.kv("domain", p.domain().str());
  doc.kv("tol", p.tol());
  doc.kv("grid_n", p.grid_n());
  doc.pop();

  if (p.is_constant())
    throw ValidationError(
        "constant profile: constant-curvature flat case; the analysis "
        "pipeline requires a non-constant profile");

  ZeroSetAnalysis za = analyze_zero_set(p);
  doc.section("zeros");
  doc.push();
  doc.kv("count", static_cast<long long>(za.zeros.size()));
  for (std::size_t i = 0; i < za.zeros.size(); ++i) {
    const Zero& z = za.zeros[i];
    doc.kv("zero." + std::to_string(i),
           "x0=" + Doc::num(z.x0) + " kind=" + kind_str(z.kind) +
               " lambda=" + Doc::num(z.lambda));
  }
  doc.kv("plateaus", static_cast<long long>(za.plateaus.size()));
  doc.pop();

  ComponentSet cs = components(p);
  doc.section("components");
  doc.push();
  doc.kv("count", static_cast<long long>(cs.comps.size()));
  doc.kv("cyclic", cs.cyclic);
  doc.kv("elementary", cs.elementary);
  for (std::size_t i = 0; i < cs.comps.size(); ++i) {
    const Component& c = cs.comps[i];
    doc.kv("component." + std::to_string(i),
           "lo=" + Doc::num(c.lo) + " hi=" + Doc::num(c.hi) +
               " sign=" + (c.sign > 0 ? "+1" : "-1"));
  }
  doc.pop();

  ContiguityGraph g = contiguity_graph(p);
  doc.section("contiguity_graph");
  doc.push();
  doc.kv("vertices", g.vertex_count());
  doc.kv("edges", g.edge_count());
  doc.kv("pi0", g.pi0_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const GraphEdge& e = g.edges[i];
    doc.kv("edge." + std::to_string(i),
           "zero=" + std::to_string(e.zero_index) + " comps=" +
               std::to_string(e.comp_a) + "," + std::to_string(e.comp_b));
  }
  doc.pop();

  SymmetryClass sym = detect_symmetry(p);
  doc.section("symmetry");
  doc.push();
  doc.kv("case", sym.label());
  if (sym.period) doc.kv("minimal_period", *sym.period);
  doc.kv("reflection_centers",
         static_cast<long long>(sym.reflection_centers.size()));
  for (std::size_t i = 0; i < sym.reflection_centers.size(); ++i)
    doc.kv("center." + std::to_string(i), sym.reflection_centers[i]);
  doc.pop();

  CaseData cd = kl_invariants(g, sym);
  doc.section("invariants");
  doc.push();
  doc.kv("k", cd.k);
  doc.kv("l", cd.ell);
  doc.kv("has_saddles", cd.has_saddles);
  doc.kv("has_elliptic_products", cd.has_elliptic_products);
  doc.kv("minimal_index", minimal_index(cd));
  doc.pop();

  SquareSet sq = squares(p);
  doc.section("squares");
  doc.push();
  doc.kv("count", static_cast<long long>(sq.squares.size()));
  for (std::size_t i = 0; i < sq.squares.size(); ++i) {
    const Square& s = sq.squares[i];
    doc.kv("square." + std::to_string(i),
           "left=" + Doc::num(s.x_left) + " right=" + Doc::num(s.x_right) +
               " width=" + Doc::num(s.width()) + " ends=" +
               end_str(s.left_end) + "," + end_str(s.right_end));
  }
  doc.kv("boundary_bands", static_cast<long long>(sq.bands.size()));
  for (std::size_t i = 0; i < sq.bands.size(); ++i) {
    const BoundaryBand& b = sq.bands[i];
    doc.kv("band." + std::to_string(i),
           std::string("width=") + Doc::num(b.width) + " end=" +
               (b.at_lower_end ? "lower" : "upper"));
  }
  doc.pop();

  LeafSpaceModel m = leaf_space(p);
  doc.section("leaf_space");
  doc.push();
  doc.kv("segments", static_cast<long long>(m.segments.size()));
  doc.kv("junctions", static_cast<long long>(m.junctions.size()));
  doc.kv("total_length", m.total_length);
  doc.kv("cyclic", m.cyclic);
  for (std::size_t i = 0; i < m.segments.size(); ++i) {
    const LeafSegment& s = m.segments[i];
    doc.kv("segment." + std::to_string(i),
           std::string("kind=") + seg_str(s.kind) +
               " length=" + Doc::num(s.length));
  }
  for (std::size_t i = 0; i < m.junctions.size(); ++i) {
    const LeafJunction& j = m.junctions[i];
    doc.kv("junction." + std::to_string(i),
           std::string("kind=") + junction_str(j.kind) + " x0=" +
               Doc::num(j.x0) + " branch_points=" +
               std::to_string(j.branch_points));
  }
  doc.pop();
  doc.pop();
  return doc.str();
}

std::string do_quotients(const CaseData& cd, std::optional<SubgroupSplit> split) {
  Doc doc;
  doc.section("quotients");
  doc.push();
  doc.kv("case", cd.label());
  doc.kv("k", cd.k);
  doc.kv("l", cd.ell);
  doc.kv("minimal_index", minimal_index(cd));
  {
    OrbifoldData o = orbifold(cd);
    doc.kv("orbifold", "surface=" + o.surface_str() +
                           " elliptic=" + std::to_string(o.n_elliptic) +
                           " p_int=" + std::to_string(o.p_int) +
                           " p_bd=" + std::to_string(o.p_bd));
  }
  if (minimal_index(cd) == 2) {
    doc.section("quotients_without_elliptic_products");
    doc.push();
    quotients_without_elliptic_products(doc, cd);
    doc.pop();
    doc.pop();
    return doc.str();
  }
  doc.section("census");
  doc.push();
  doc.kv("chi", census_chi(cd));
  doc.kv("total", census_total(cd));
  std::vector<CensusRow> rows = census(cd, split);
  long long sum = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CensusRow& r = rows[i];
    sum += r.count;
    doc.kv("row." + std::to_string(i),
           "j=" + std::to_string(r.j) + " count=" + std::to_string(r.count) +
               " signature=" + r.sig.str() + " chi=" + std::to_string(r.chi));
  }
  doc.kv("row_sum", sum);
  doc.pop();
  doc.pop();
  return doc.str();
}

std::string do_components_invariant(const AnyInvariant& inv) {
  Doc doc;
  doc.section("components");
  doc.push();
  switch (inv.type) {
    case AnyInvariant::Type::Torus: {
      std::vector<std::string> v = validate_torus(inv.torus);
      if (!v.empty()) throw ValidationError(v.front());
      doc.kv("type", "torus");
      TorusComponentIndex idx = torus_r(inv.torus);
      SignSeq seq{mark_signs(inv.torus.fbar, inv.torus.marks), true};
      doc.kv("signs", seq.str());
      doc.kv("r", idx.r);
      doc.kv("k_plus", idx.k_plus);
      doc.kv("k_minus", idx.k_minus);
      break;
    }
    case AnyInvariant::Type::Elementary:
      doc.kv("type", "elementary");
      doc.kv("r", 0);
      break;
    case AnyInvariant::Type::Bottle1: {
      std::vector<std::string> v = validate_bottle1(inv.bottle1);
      if (!v.empty()) throw ValidationError(v.front());
      doc.kv("type", "bottle1");
      BottleComponentIndex idx = bottle1_component(inv.bottle1);
      doc.kv("n_abs", idx.n_abs);
      doc.kv("m_bar", idx.m_bar ? std::to_string(*idx.m_bar) : "undefined");
      doc.kv("temporal_orientable", idx.temporal_orientable);
      doc.kv("spatial_orientable", idx.spatial_orientable);
      break;
    }
    case AnyInvariant::Type::Bottle2: {
      std::vector<std::string> v = validate_bottle2(inv.bottle2);
      if (!v.empty()) throw ValidationError(v.front());
      doc.kv("type", "bottle2");
      BottleComponentIndex idx = bottle2_nabs(inv.bottle2);
      doc.kv("n_abs", idx.n_abs);
      doc.kv("m_bar", idx.m_bar ? std::to_string(*idx.m_bar) : "undefined");
      doc.kv("temporal_orientable", idx.temporal_orientable);
      doc.kv("spatial_orientable", idx.spatial_orientable);
      break;
    }
  }
  doc.pop();
  return doc.str();
}

std::string do_components_profile(const FunctionProfile& p,
                                  const std::string& type) {
  Doc doc;
  doc.section("components");
  doc.push();
  doc.kv("profile_type", type);
  if (type == "torus") {
    doc.kv("realizable",
           torus_component_set(p) == TorusComponentSet::AllComponents
               ? "all_components"
               : "flat_only");
  } else if (type == "bottle1") {
    std::string s;
    for (auto& pr : bottle1_component_set(p)) {
      if (!s.empty()) s += " ";
      s += "(" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ")";
    }
    doc.kv("realizable", s);
  } else if (type == "bottle2") {
    doc.kv("realizable", bottle2_component_set(p).str());
  } else {
    throw ValidationError("component sets need type torus|bottle1|bottle2");
  }
  doc.pop();
  return doc.str();
}

std::string do_conjugate(const FunctionProfile& p, int eps, double C,
                         const std::string& plot_path) {
  ConjugateReport rep = conjugate_search(p, eps, C);
  Doc doc;
  doc.section("conjugate");
  doc.push();
  const char* status = rep.status == ConjugateReport::Status::Found
                           ? "found"
                           : rep.status == ConjugateReport::Status::NotFound
                                 ? "not_found"
                                 : "inconclusive";
  doc.kv("status", status);
  doc.kv("eps", rep.eps);
  doc.kv("C", rep.C);
  if (rep.status != ConjugateReport::Status::NotFound) {
    doc.kv("a", rep.a);
    doc.kv("b", rep.b);
    doc.kv("t_tangency", rep.t_tangency);
    doc.kv("t_quadrature", rep.t_quadrature);
    if (rep.t_quadrature > 0)
      doc.kv("relative_gap",
             std::abs(rep.t_tangency - rep.t_quadrature) / rep.t_quadrature);
    doc.kv("tangency_p", rep.tangency_p);
    doc.kv("tangency_x_error", rep.tangency_x_error);
    doc.kv("drift_C", rep.trajectory.drift_C);
    doc.kv("drift_E", rep.trajectory.drift_E);
  }
  if (!rep.note.empty()) doc.kv("note", rep.note);
  doc.pop();
  if (!plot_path.empty()) {
    std::vector<double> tang;
    if (rep.status == ConjugateReport::Status::Found) {
      tang.push_back(rep.a);
      tang.push_back(rep.b);
    }
    std::ofstream out(plot_path);
    out << svg_phase_plot(rep.trajectory, p, tang, "doubly tangent geodesic");
  }
  return doc.str();
}

std::string do_geodesic(const FunctionProfile& p, const GeodesicState& start,
                        double tmax, const std::string& plot_path) {
  Trajectory traj = integrate(start, p, tmax);
  Doc doc;
  doc.section("geodesic");
  doc.push();
  doc.kv("C0", traj.C0);
  doc.kv("E0", traj.E0);
  doc.kv("drift_C", traj.drift_C);
  doc.kv("drift_E", traj.drift_E);
  doc.kv("blew_up", traj.blew_up);
  if (traj.blew_up) doc.kv("blowup_time", traj.blowup_time);
  doc.kv("left_domain", traj.left_domain);
  doc.kv("samples", static_cast<long long>(traj.samples.size()));
  doc.pop();
  if (!plot_path.empty()) {
    std::ofstream out(plot_path);
    out << svg_phase_plot(traj, p, {}, "geodesic");
  }
  return doc.str() + trajectory_table(traj, p);
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  CLI::App app{"analysis toolkit for Lorentzian surfaces 2dxdy + f(x)dy^2 "
               "with a Killing field"};
  app.require_subcommand(1);

  std::string profile_path, format = "human", plot_path;
  std::string marks_spec, t0_spec = "1", tau_spec = "0", c_spec = "1";
  std::string invariant_a, invariant_b, type_spec = "torus", case_label;
  std::string x0_spec = "0", y0_spec = "0", p0_spec = "0", q0_spec = "1",
              tmax_spec = "10";
  int eps = 1, k_override = -1, l_override = -1, k1 = -1, l1 = -1;
  double tol = 1e-6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--profile", profile_path, "profile config file");
    cmd->add_option("--format", format)->check(CLI::IsMember({"human", "structured"}));
    cmd->add_option("--plot", plot_path, "write an SVG plot to this path");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "zero set, components, "
                                         "graph, symmetry, squares, leaf space");
  add_common(analyze);

  CLI::App* quotients = app.add_subcommand("quotients", "orbifold data and "
                                           "census of minimal quotients");
  add_common(quotients);
  quotients->add_option("--case", case_label, "case label override, e.g. (0)");
  quotients->add_option("--k", k_override);
  quotients->add_option("--l", l_override);
  quotients->add_option("--k1", k1, "in/out split for the bilateral row");
  quotients->add_option("--l1", l1);

  CLI::App* classify = app.add_subcommand("classify", "build and canonicalize "
                                          "a classification invariant");
  add_common(classify);
  classify->add_option("--type", type_spec)
      ->check(CLI::IsMember({"torus", "bottle1", "bottle2"}));
  classify->add_option("--t0", t0_spec);
  classify->add_option("--tau", tau_spec);
  classify->add_option("--marks", marks_spec, "comma-separated positions");
  classify->add_option("--invariant", invariant_a, "canonicalize this file");

  CLI::App* compare = app.add_subcommand("compare", "equivalence of two "
                                         "invariant files");
  add_common(compare);
  compare->add_option("--a", invariant_a)->required();
  compare->add_option("--b", invariant_b)->required();
  compare->add_option("--tol", tol);

  CLI::App* componentsc = app.add_subcommand("components", "connected-"
                                             "component indices");
  add_common(componentsc);
  componentsc->add_option("--invariant", invariant_a);
  componentsc->add_option("--type", type_spec)
      ->check(CLI::IsMember({"torus", "bottle1", "bottle2"}));

  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate one geodesic");
  add_common(geodesic);
  geodesic->add_option("--x0", x0_spec);
  geodesic->add_option("--y0", y0_spec);
  geodesic->add_option("--p0", p0_spec);
  geodesic->add_option("--q0", q0_spec);
  geodesic->add_option("--tmax", tmax_spec);

  CLI::App* conjugate = app.add_subcommand("conjugate", "search for a doubly "
                                           "tangent geodesic");
  add_common(conjugate);
  conjugate->add_option("--eps", eps)->check(CLI::IsMember({-1, 1}));
  conjugate->add_option("--C", c_spec);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream ss;
    ss << app.help();
    res.out = ss.str();
    res.code = 0;
    return res;
  } catch (const CLI::ParseError& e) {
    res.err = std::string("usage error: ") + e.what() + "\n";
    res.code = 2;
    return res;
  }

  auto need_profile = [&]() -> FunctionProfile {
    if (profile_path.empty())
      throw ValidationError("this command needs --profile");
    return load_profile(profile_path);
  };

  try {
    std::string doc;
    if (app.got_subcommand(analyze)) {
      doc = do_analyze(need_profile());
    } else if (app.got_subcommand(quotients)) {
      CaseData cd;
      std::optional<SubgroupSplit> split;
      if (!case_label.empty()) {
        if (k_override < 0 || l_override < 0)
          throw ValidationError("--case override needs --k and --l");
        cd = case_from_label(case_label, k_override, l_override);
      } else {
        FunctionProfile p = need_profile();
        ContiguityGraph g = contiguity_graph(p);
        SymmetryClass sym = detect_symmetry(p);
        cd = kl_invariants(g, sym);
        if (components(p).elementary) {
          // elementary profiles: no saddles, minimal index 2, the census
          // machinery reduces to the one-vertex row
          cd.k = 0;
          cd.ell = p.domain().is_periodic() ? 0 : 1;
          if (p.domain().is_periodic())
            cd.subtype = SymSubtype::PairUnilateral;
        }
      }
      if (k1 >= 0 && l1 >= 0) split = SubgroupSplit{k1, l1};
      doc = do_quotients(cd, split);
    } else if (app.got_subcommand(classify)) {
      if (!invariant_a.empty()) {
        AnyInvariant inv = load_invariant(invariant_a);
        switch (inv.type) {
          case AnyInvariant::Type::Torus:
            doc = serialize_torus(canonical_torus(inv.torus));
            break;
          case AnyInvariant::Type::Bottle1: {
            auto v = validate_bottle1(inv.bottle1);
            if (!v.empty()) throw ValidationError(v.front());
            doc = serialize_bottle1(inv.bottle1);
            break;
          }
          case AnyInvariant::Type::Bottle2: {
            auto v = validate_bottle2(inv.bottle2);
            if (!v.empty()) throw ValidationError(v.front());
            doc = serialize_bottle2(inv.bottle2);
            break;
          }
          case AnyInvariant::Type::Elementary:
            throw ValidationError("elementary invariants are stored as given");
        }
      } else {
        FunctionProfile p = need_profile();
        std::vector<double> marks = parse_marks(marks_spec);
        double t0 = parse_real(t0_spec), tau = parse_real(tau_spec);
        if (type_spec == "torus") {
          TorusInvariant inv = build_torus(p, t0, tau, marks);
          doc = serialize_torus(canonical_torus(inv));
        } else if (type_spec == "bottle1") {
          doc = serialize_bottle1(build_bottle1(p, t0, marks));
        } else {
          doc = serialize_bottle2(build_bottle2(p, t0, marks));
        }
      }
    } else if (app.got_subcommand(compare)) {
      AnyInvariant a = load_invariant(invariant_a);
      AnyInvariant b = load_invariant(invariant_b);
      if (a.type != b.type)
        throw ValidationError("invariant type mismatch: cannot compare");
      EquivalenceReport rep;
      std::string type;
      if (a.type == AnyInvariant::Type::Torus) {
        type = "torus";
        rep = equivalent_tori(a.torus, b.torus, tol);
      } else if (a.type == AnyInvariant::Type::Bottle1) {
        type = "bottle1";
        rep = equivalent_bottles1(a.bottle1, b.bottle1, tol);
      } else if (a.type == AnyInvariant::Type::Bottle2) {
        type = "bottle2";
        rep = equivalent_bottles2(a.bottle2, b.bottle2, tol);
      } else {
        throw ValidationError("elementary invariants compare by direct fields");
      }
      Doc d;
      d.section("compare");
      d.push();
      d.kv("type", type);
      d.kv("verdict", rep.equivalent ? "EQUIVALENT" : "DISTINCT");
      if (rep.equivalent) d.kv("witness", rep.witness);
      d.kv("residual", rep.residual);
      d.kv("tolerance", tol);
      d.kv("borderline", rep.borderline);
      d.pop();
      doc = d.str();
    } else if (app.got_subcommand(componentsc)) {
      if (!invariant_a.empty()) {
        doc = do_components_invariant(load_invariant(invariant_a));
      } else {
        doc = do_components_profile(need_profile(), type_spec);
      }
    } else if (app.got_subcommand(geodesic)) {
      FunctionProfile p = need_profile();
      GeodesicState s;
      s.x = parse_real(x0_spec);
      s.y = parse_real(y0_spec);
      s.p = parse_real(p0_spec);
      s.q = parse_real(q0_spec);
      doc = do_geodesic(p, s, parse_real(tmax_spec), plot_path);
    } else if (app.got_subcommand(conjugate)) {
      FunctionProfile p = need_profile();
      doc = do_conjugate(p, eps, parse_real(c_spec), plot_path);
    }

    if (format == "human") {
      res.out = "== lks ==\n" + doc;
    } else {
      res.out = doc;
    }
    res.code = 0;
  } catch (const ParseError& e) {
    res.err = std::string("parse error: ") + e.what() + "\n";
    res.code = 2;
  } catch (const std::exception& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.code = 1;
  }
  return res;
}

int lks_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  CliResult r = run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}

}  // namespace lks
