#include "lks/isogroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace lks {

namespace {

long long binom(int n, int m) {
  if (m < 0 || n < 0 || m > n) return 0;
  long long r = 1;
  for (int i = 0; i < m; ++i) r = r * (n - i) / (i + 1);
  return r;
}

long long pow2(int e) { return e < 0 ? 0 : 1LL << e; }

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
  int count() {
    int c = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
    return c;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Presentation and words.

bool CoxeterPresentation::commutes(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (auto& pr : commuting)
    if (pr.first == a && pr.second == b) return true;
  return false;
}

CoxeterPresentation presentation(const ContiguityGraph& g) {
  CoxeterPresentation p;
  p.generators = g.vertex_count();
  std::set<std::pair<int, int>> pairs;
  for (const GraphEdge& e : g.edges) {
    int a = e.comp_a, b = e.comp_b;
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pairs.insert({a, b});
  }
  p.commuting.assign(pairs.begin(), pairs.end());
  return p;
}

Word normal_form(Word w, const CoxeterPresentation& p) {
  for (int g : w)
    if (g < 0 || g >= p.generators)
      throw ValidationError("word uses an unknown generator index");
  // cancellation: equal letters separated only by commuting ones
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j] == w[i]) {
          w.erase(w.begin() + j);
          w.erase(w.begin() + i);
          changed = true;
          break;
        }
        if (!p.commutes(w[i], w[j])) break;
      }
    }
  }
  // the word is now geodesic; sort adjacent commuting letters shortlex
  changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] > w[i + 1] && p.commutes(w[i], w[i + 1])) {
        std::swap(w[i], w[i + 1]);
        changed = true;
      }
    }
  }
  return w;
}

std::vector<Word> enumerate_group(const CoxeterPresentation& p, std::size_t cap) {
  std::set<Word> seen;
  std::vector<Word> queue{{}};
  seen.insert({});
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Word w = queue[qi];
    for (int g = 0; g < p.generators; ++g) {
      Word next = w;
      next.push_back(g);
      next = normal_form(std::move(next), p);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw ValidationError("group enumeration exceeded cap (infinite group?)");
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------------------
// (k, l) invariants.

std::string CaseData::label() const {
  SymmetryClass sc;
  sc.case_ = case_;
  sc.subtype = subtype;
  return sc.label();
}

namespace {

int find_comp_at(const ContiguityGraph& g, double pos) {
  const auto& cs = g.comps;
  double T = cs.period;
  for (int i = 0; i < g.vertex_count(); ++i) {
    double mid = cs.comps[i].midpoint();
    double d = std::abs(mid - pos);
    if (cs.cyclic) {
      d = std::fmod(d, T);
      d = std::min(d, T - d);
    }
    if (d <= 1e-6 * std::max(1.0, std::abs(T) + std::abs(pos))) return i;
  }
  return -1;
}

int find_zero_at(const ContiguityGraph& g, double pos) {
  double T = g.comps.period;
  for (std::size_t i = 0; i < g.zeros.size(); ++i) {
    double d = std::abs(g.zeros[i].x0 - pos);
    if (g.comps.cyclic) {
      d = std::fmod(d, T);
      d = std::min(d, T - d);
    }
    if (d <= 1e-6 * std::max(1.0, std::abs(T) + std::abs(pos)))
      return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

CaseData kl_invariants(const ContiguityGraph& g, const SymmetryClass& sym) {
  CaseData cd;
  cd.case_ = sym.case_;
  cd.subtype = sym.subtype;
  cd.k_gen = g.edge_count();
  cd.ell_gen = g.pi0_count;

  int nv = g.vertex_count();
  int ne = g.edge_count();
  UnionFind vu(std::max(nv, 1)), eu(std::max(ne, 1));

  struct Map1 {
    bool reflect;
    double offset;  // reflect: x -> offset - x; else x -> x + offset
  };
  std::vector<Map1> maps;
  bool cyclic = g.comps.cyclic;
  double T = g.comps.period;
  if (cyclic && sym.period && *sym.period < T - 1e-9)
    maps.push_back({false, *sym.period});
  if (!sym.reflection_centers.empty())
    maps.push_back({true, 2.0 * sym.reflection_centers.front()});

  for (const Map1& m : maps) {
    for (int i = 0; i < nv; ++i) {
      double mid = g.comps.comps[i].midpoint();
      double img = m.reflect ? m.offset - mid : mid + m.offset;
      int j = find_comp_at(g, img);
      if (j < 0)
        throw ValidationError("symmetry does not permute the components");
      vu.unite(i, j);
    }
    for (int e = 0; e < ne; ++e) {
      double z = g.zeros[g.edges[e].zero_index].x0;
      double img = m.reflect ? m.offset - z : z + m.offset;
      int zj = find_zero_at(g, img);
      int ej = -1;
      for (int e2 = 0; e2 < ne; ++e2)
        if (g.edges[e2].zero_index == zj) ej = e2;
      if (ej < 0) throw ValidationError("symmetry does not permute the saddles");
      eu.unite(e, ej);
    }
  }

  int v_orb = nv > 0 ? vu.count() : 0;
  int e_orb = ne > 0 ? eu.count() : 0;
  cd.k = e_orb;
  cd.ell = v_orb - e_orb;
  cd.has_saddles = ne > 0;
  cd.has_elliptic_products =
      cd.has_saddles || cd.case_ == SymCase::C1b || cd.case_ == SymCase::C3b ||
      cd.case_ == SymCase::C3c;
  return cd;
}

int minimal_index(const CaseData& cd) { return cd.has_elliptic_products ? 4 : 2; }

// ---------------------------------------------------------------------------
// Orbifold structure of the Killing-preserving quotient.

std::string OrbifoldData::surface_str() const {
  switch (surface) {
    case Surface::Sphere: return "sphere";
    case Surface::ProjectivePlane: return "projective plane";
    case Surface::Disk: return "disk";
    case Surface::Torus: return "torus";
    case Surface::KleinBottle: return "Klein bottle";
    case Surface::Moebius: return "Moebius band";
    case Surface::Annulus: return "annulus";
  }
  return "";
}

OrbifoldData orbifold(const CaseData& cd) {
  using S = OrbifoldData::Surface;
  OrbifoldData o;
  o.n_elliptic = cd.k;
  switch (cd.case_) {
    case SymCase::C0:
      o = {S::Sphere, cd.k, cd.ell, 0};
      break;
    case SymCase::C1a:
      o = {S::ProjectivePlane, cd.k, cd.ell, 0};
      break;
    case SymCase::C1b:
      o = {S::Disk, cd.k, cd.ell - 1, 1};
      break;
    case SymCase::C2:
      switch (cd.subtype) {
        case SymSubtype::PairUnilateral:
        case SymSubtype::NotApplicable:
          o = {S::Sphere, cd.k, cd.ell + 2, 0};
          break;
        case SymSubtype::PairBilateral:
        case SymSubtype::Odd:
          o = {S::Torus, cd.k, cd.ell, 0};
          break;
      }
      break;
    case SymCase::C3a:
      o = {S::KleinBottle, cd.k, cd.ell, 0};
      break;
    case SymCase::C3b:
      o = {S::Moebius, cd.k, cd.ell - 1, 1};
      break;
    case SymCase::C3c:
      if (cd.subtype == SymSubtype::PairUnilateral)
        o = {S::Disk, cd.k, cd.ell - 1, 2};
      else if (cd.subtype == SymSubtype::PairBilateral)
        o = {S::Annulus, cd.k, cd.ell - 2, 2};
      else
        throw InvalidRowError("case (3c) needs an even-type subtype");
      break;
  }
  if (o.p_int < 0)
    throw InvalidRowError("orbifold row needs more graph components: p_int < 0");
  return o;
}

// ---------------------------------------------------------------------------
// Census.

std::string QuotientSignature::str() const {
  return "(" + std::to_string(genus) + ";" + std::to_string(punctures) +
         (orientable ? ")^+" : ")^-");
}

namespace {

enum class Row {
  R0, R1a, R1b, R2u, R2b, R2m, R3a, R3b, R3cu, R3cb
};

Row row_of(const CaseData& cd) {
  switch (cd.case_) {
    case SymCase::C0: return Row::R0;
    case SymCase::C1a: return Row::R1a;
    case SymCase::C1b: return Row::R1b;
    case SymCase::C2:
      if (cd.subtype == SymSubtype::PairUnilateral ||
          cd.subtype == SymSubtype::NotApplicable)
        return Row::R2u;
      if (cd.subtype == SymSubtype::PairBilateral) return Row::R2b;
      return Row::R2m;
    case SymCase::C3a: return Row::R3a;
    case SymCase::C3b: return Row::R3b;
    case SymCase::C3c:
      if (cd.subtype == SymSubtype::PairUnilateral) return Row::R3cu;
      if (cd.subtype == SymSubtype::PairBilateral) return Row::R3cb;
      throw InvalidRowError("case (3c) needs an even-type subtype");
  }
  throw InvalidRowError("unknown case");
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidRowError(msg);
}

void check_row_preconditions(const CaseData& cd) {
  Row r = row_of(cd);
  switch (r) {
    case Row::R0:
    case Row::R1a:
    case Row::R3a:
      require(cd.k >= 1, "row " + cd.label() + " requires saddles (k > 0)");
      require(cd.ell >= 1, "row " + cd.label() + " requires l >= 1");
      break;
    case Row::R1b:
    case Row::R3b:
    case Row::R3cu:
      require(cd.ell >= 1, "row " + cd.label() + " requires l >= 1");
      break;
    case Row::R2u:
      require(cd.k >= 1, "row " + cd.label() + " requires saddles (k > 0)");
      if (cd.ell == 0)
        require(cd.k % 2 == 0, "connected circle quotient forces k even");
      break;
    case Row::R2b:
      require(cd.k >= 1, "row " + cd.label() + " requires saddles (k > 0)");
      require(cd.ell >= 2, "bilateral row requires l >= 2");
      break;
    case Row::R2m:
      require(cd.k >= 1, "row " + cd.label() + " requires saddles (k > 0)");
      require(cd.ell >= 1, "row " + cd.label() + " requires l >= 1");
      break;
    case Row::R3cb:
      require(cd.ell >= 2, "row " + cd.label() + " requires l >= 2");
      break;
  }
}

}  // namespace

std::vector<int> valid_j(const CaseData& cd) {
  check_row_preconditions(cd);
  Row r = row_of(cd);
  std::vector<int> out;
  auto parity_range = [&](int jmax) {
    for (int j = 0; j <= jmax; ++j)
      if ((cd.k + j) % 2 == 0) out.push_back(j);
  };
  switch (r) {
    case Row::R0:
    case Row::R1a:
    case Row::R2m:
    case Row::R2b:
    case Row::R3a:
      parity_range(cd.ell);
      break;
    case Row::R2u:
      parity_range(cd.ell + 2);
      break;
    case Row::R1b:
    case Row::R3b:
    case Row::R3cu:
      for (int j = 0; j <= cd.ell - 1; ++j) out.push_back(j);
      break;
    case Row::R3cb:
      for (int j = 0; j <= cd.ell - 2; ++j) out.push_back(j);
      break;
  }
  return out;
}

long long count_subgroups(const CaseData& cd, int j,
                          std::optional<SubgroupSplit> split) {
  std::vector<int> js = valid_j(cd);
  require(std::find(js.begin(), js.end(), j) != js.end(),
          "j=" + std::to_string(j) + " is outside the valid range of row " +
              cd.label());
  const int k = cd.k, l = cd.ell;
  switch (row_of(cd)) {
    case Row::R0: return binom(l, j);
    case Row::R1a: return 2 * binom(l, j);
    case Row::R1b: return binom(l - 1, j);
    case Row::R2u: return binom(l, j) + binom(l, j - 1) + binom(l, j - 2);
    case Row::R2b: {
      require(split.has_value(),
              "bilateral row needs the (k1, l1) in/out split");
      require(split->ell1 >= 1 && split->ell1 <= l - 1 && split->k1 >= 0 &&
                  split->k1 <= k,
              "invalid (k1, l1) split");
      long long sum = 0;
      for (int j1 = 0; j1 <= split->ell1; ++j1)
        if ((split->k1 + j1) % 2 == 0)
          sum += binom(split->ell1, j1) * binom(l - split->ell1, j - j1);
      return 2 * binom(l, j) + 2 * sum;
    }
    case Row::R2m: return 3 * binom(l, j);
    case Row::R3a: return 4 * binom(l, j);
    case Row::R3b: return 2 * binom(l - 1, j);
    case Row::R3cu: return binom(l - 1, j);
    case Row::R3cb: return 2 * binom(l - 2, j);
  }
  throw InvalidRowError("unreachable");
}

QuotientSignature signature(const CaseData& cd, int j) {
  std::vector<int> js = valid_j(cd);
  require(std::find(js.begin(), js.end(), j) != js.end(),
          "j=" + std::to_string(j) + " is outside the valid range of row " +
              cd.label());
  const int k = cd.k, l = cd.ell;
  QuotientSignature s;
  switch (row_of(cd)) {
    case Row::R0:
      s = {(k + j) / 2 - 1, 2 * l - j, true};
      break;
    case Row::R1a:
      s = {k + j, 2 * l - j, false};
      break;
    case Row::R1b:
      if (k + j == 0)
        s = {0, 2 * l - 1, true};  // boundary double cover is orientable
      else
        s = {k + j, 2 * l - j - 1, false};
      break;
    case Row::R2u:
      s = {(k + j) / 2 - 1, 2 * l + 4 - j, true};
      break;
    case Row::R2b:
    case Row::R2m:
      s = {(k + j) / 2 + 1, 2 * l - j, true};
      break;
    case Row::R3a:
      s = {k + j + 2, 2 * l - j, false};
      break;
    case Row::R3b:
      s = {k + j + 2, 2 * l - j - 1, false};
      break;
    case Row::R3cu:
      if (k + j == 0)
        s = {0, 2 * l, true};  // same boundary degeneration as row (1b)
      else
        s = {k + j, 2 * l - j, false};
      break;
    case Row::R3cb:
      s = {k + j + 2, 2 * l - j - 2, false};
      break;
  }
  require(s.punctures >= 1,
          "row would produce a closed quotient (all quotients are noncompact)");
  require(s.orientable || s.genus >= 1,
          "nonorientable signature needs genus >= 1");
  require(s.genus >= 0, "negative genus");
  return s;
}

int census_chi(const CaseData& cd) {
  check_row_preconditions(cd);
  const int k = cd.k, l = cd.ell;
  switch (row_of(cd)) {
    case Row::R0: return 4 - k - 2 * l;
    case Row::R1a: return 2 - k - 2 * l;
    case Row::R1b: return 3 - 2 * l - k;
    case Row::R2u:
    case Row::R2b:
    case Row::R2m: return -k - 2 * l;
    case Row::R3a: return -k - 2 * l;
    case Row::R3b: return 1 - 2 * l - k;
    case Row::R3cu:
    case Row::R3cb: return 2 - 2 * l - k;
  }
  throw InvalidRowError("unreachable");
}

long long census_total(const CaseData& cd) {
  check_row_preconditions(cd);
  const int l = cd.ell;
  switch (row_of(cd)) {
    case Row::R0: return pow2(l - 1);
    case Row::R1a: return pow2(l);
    case Row::R1b: return pow2(l - 1);
    case Row::R2u: return l == 0 ? 2 : 3 * pow2(l - 1);
    case Row::R2b:
    case Row::R2m: return 3 * pow2(l - 1);
    case Row::R3a: return pow2(l + 1);
    case Row::R3b: return pow2(l);
    case Row::R3cu:
    case Row::R3cb: return pow2(l - 1);
  }
  throw InvalidRowError("unreachable");
}

std::vector<CensusRow> census(const CaseData& cd,
                              std::optional<SubgroupSplit> split) {
  std::vector<CensusRow> rows;
  for (int j : valid_j(cd)) {
    CensusRow r;
    r.j = j;
    r.count = count_subgroups(cd, j, split);
    r.sig = signature(cd, j);
    r.chi = r.sig.chi();
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Character enumeration.

SymmetricGraph symmetric_graph_of(const ContiguityGraph& g,
                                  const SymmetryClass& sym) {
  SymmetricGraph out;
  out.n = g.vertex_count();
  std::set<std::pair<int, int>> pairs;
  for (const GraphEdge& e : g.edges) {
    int a = e.comp_a, b = e.comp_b;
    if (a > b) std::swap(a, b);
    if (a != b) pairs.insert({a, b});
  }
  out.edges.assign(pairs.begin(), pairs.end());
  if (!sym.reflection_centers.empty()) {
    double c = sym.reflection_centers.front();
    std::vector<int> tau(out.n, -1);
    for (int i = 0; i < out.n; ++i) {
      int j = find_comp_at(g, 2 * c - g.comps.comps[i].midpoint());
      if (j < 0) throw ValidationError("reflection does not permute components");
      tau[i] = j;
    }
    out.tau = tau;
  }
  return out;
}

GraphOrbitData graph_orbits(const SymmetricGraph& g) {
  GraphOrbitData out;
  UnionFind vu(std::max(g.n, 1));
  if (g.tau)
    for (int i = 0; i < g.n; ++i) vu.unite(i, (*g.tau)[i]);
  out.vertex_orbits = g.n > 0 ? vu.count() : 0;

  int ne = static_cast<int>(g.edges.size());
  UnionFind eu(std::max(ne, 1));
  if (g.tau) {
    auto edge_index = [&](int a, int b) -> int {
      if (a > b) std::swap(a, b);
      for (int e = 0; e < ne; ++e)
        if (g.edges[e] == std::make_pair(a, b)) return e;
      return -1;
    };
    for (int e = 0; e < ne; ++e) {
      int a = (*g.tau)[g.edges[e].first], b = (*g.tau)[g.edges[e].second];
      int e2 = edge_index(a, b);
      if (e2 < 0) throw ValidationError("involution does not permute edges");
      eu.unite(e, e2);
    }
  }
  out.edge_orbits = ne > 0 ? eu.count() : 0;

  // connected components, then their orbits under tau
  UnionFind cu(std::max(g.n, 1));
  for (auto& e : g.edges) cu.unite(e.first, e.second);
  std::map<int, int> comp_id;
  for (int i = 0; i < g.n; ++i) comp_id.emplace(cu.find(i), comp_id.size());
  int nc = static_cast<int>(comp_id.size());
  UnionFind co(std::max(nc, 1));
  if (g.tau)
    for (int i = 0; i < g.n; ++i)
      co.unite(comp_id[cu.find(i)], comp_id[cu.find((*g.tau)[i])]);
  out.component_orbits = g.n > 0 ? co.count() : 0;
  return out;
}

namespace {

int fixed_vertex_of(const SymmetricGraph& g) {
  if (!g.tau) throw ValidationError("case needs an involution");
  int fixed = -1;
  for (int i = 0; i < g.n; ++i)
    if ((*g.tau)[i] == i) {
      if (fixed >= 0) throw ValidationError("involution fixes several vertices");
      fixed = i;
    }
  return fixed;
}

}  // namespace

CharacterEnumeration enumerate_characters(const SymmetricGraph& g, CharCase c) {
  if (g.n > 16) throw ValidationError("brute-force enumeration capped at 16 vertices");
  if (c != CharCase::Trivial && !g.tau)
    throw ValidationError("symmetric case needs an involution");
  if (c == CharCase::C1b && fixed_vertex_of(g) < 0)
    throw ValidationError("case (1b) needs a fixed vertex");
  if (c == CharCase::C1a && g.tau && fixed_vertex_of(g) >= 0)
    throw ValidationError("case (1a) must not fix a vertex");

  CharacterEnumeration out;

  // rho: +-1 on the vertices, extra free value on the elliptic generator
  // for (1a); forced -1 on the reflection for (1b).  Assignments are
  // normalized by fixing the first vertex to +1 (global flip).
  for (long long mask = 0; mask < (1LL << g.n); ++mask) {
    std::vector<int> eps(g.n);
    for (int i = 0; i < g.n; ++i) eps[i] = (mask >> i) & 1 ? -1 : 1;
    if (g.n > 0 && eps[0] != 1) continue;
    bool ok = true;
    for (auto& e : g.edges)
      if (eps[e.first] * eps[e.second] != -1) ok = false;
    if (ok && g.tau && c != CharCase::Trivial)
      for (int i = 0; i < g.n; ++i)
        if (eps[(*g.tau)[i]] != eps[i]) ok = false;
    if (!ok) continue;
    if (c == CharCase::C1a) {
      for (int s = -1; s <= 1; s += 2) {
        std::vector<int> a = eps;
        a.push_back(s);
        out.rho_assignments.push_back(std::move(a));
      }
    } else if (c == CharCase::C1b) {
      std::vector<int> a = eps;
      a.push_back(-1);  // value on the non-generic reflection
      out.rho_assignments.push_back(std::move(a));
    } else {
      out.rho_assignments.push_back(std::move(eps));
    }
  }
  out.rho_count = static_cast<long long>(out.rho_assignments.size());

  // omega: values in the three nonzero classes {1,2,3}; kernels counted
  // modulo the automorphisms of the four-group (permutations of {1,2,3})
  int slots = g.n + (c == CharCase::Trivial ? 0 : 1);
  if (slots > 12) throw ValidationError("omega enumeration capped at 12 slots");
  int alpha0 = c == CharCase::C1b ? fixed_vertex_of(g) : -1;
  std::set<std::vector<int>> canon;
  std::vector<int> val(slots, 1);
  long long total = 1;
  for (int i = 0; i < slots; ++i) total *= 3;
  static const int perms[6][4] = {{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3},
                                  {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1}};
  for (long long code = 0; code < total; ++code) {
    long long t = code;
    for (int i = 0; i < slots; ++i) {
      val[i] = static_cast<int>(t % 3) + 1;
      t /= 3;
    }
    bool ok = true;
    for (auto& e : g.edges)
      if (val[e.first] == val[e.second]) ok = false;
    if (ok && g.tau && c != CharCase::Trivial)
      for (int i = 0; i < g.n; ++i)
        if (val[(*g.tau)[i]] != val[i]) ok = false;
    if (ok && c == CharCase::C1b && val[slots - 1] == val[alpha0]) ok = false;
    if (!ok) continue;
    std::vector<int> best;
    for (auto& perm : perms) {
      std::vector<int> img(slots);
      for (int i = 0; i < slots; ++i) img[i] = perm[val[i]];
      if (best.empty() || img < best) best = img;
    }
    canon.insert(best);
  }
  out.omega_count = static_cast<long long>(canon.size());
  return out;
}

long long closed_form_rho(const SymmetricGraph& g, CharCase c) {
  GraphOrbitData o = graph_orbits(g);
  switch (c) {
    case CharCase::Trivial: return pow2(o.component_orbits - 1);
    case CharCase::C1a: return pow2(o.component_orbits);
    case CharCase::C1b: return pow2(o.component_orbits - 1);
  }
  return 0;
}

long long closed_form_omega(const SymmetricGraph& g, CharCase c) {
  GraphOrbitData o = graph_orbits(g);
  long long p3 = 1;
  switch (c) {
    case CharCase::Trivial: {
      for (int i = 0; i < o.component_orbits - 1; ++i) p3 *= 3;
      return pow2(o.edge_orbits - 1) * p3;
    }
    case CharCase::C1a: {
      for (int i = 0; i < o.component_orbits; ++i) p3 *= 3;
      return pow2(o.edge_orbits - 1) * p3;
    }
    case CharCase::C1b: {
      for (int i = 0; i < o.component_orbits - 1; ++i) p3 *= 3;
      return pow2(o.edge_orbits) * p3;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Deformation spaces.

DeformationDims deformation_dim(const QuotientSignature& sig, bool twisted) {
  if (sig.punctures >= 1) {
    int r = sig.orientable ? 2 * sig.genus + sig.punctures - 1
                           : sig.genus + sig.punctures - 1;
    if (!twisted) return {r, r};
    if (r < 1)
      throw ValidationError("twisted character needs a nontrivial group");
    return {r, r - 1};
  }
  if (sig.orientable && sig.genus == 1) {
    if (twisted)
      throw ValidationError("the torus group acts by Killing-preserving elements");
    return {2, 2};
  }
  if (!sig.orientable && sig.genus == 2) {
    return twisted ? DeformationDims{2, 1} : DeformationDims{1, 1};
  }
  throw ValidationError("deformation space: unsupported group type " + sig.str());
}

}  // namespace lks
