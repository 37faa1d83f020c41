#pragma once

// Isometry-group combinatorics of the universal extension: right-angled
// Coxeter presentation of the generic subgroup, word normal forms, the
// (k, l) invariants of the contiguity graph modulo the symmetries of f,
// orbifold structure of the Killing-preserving quotient, the census of
// torsion-free subgroups of minimal index with their surface signatures,
// character enumeration, and deformation-space dimensions.

#include <optional>
#include <string>
#include <vector>

#include "lks/profile.hpp"

namespace lks {

// ---------------------------------------------------------------------------
// Presentation and words.

struct CoxeterPresentation {
  int generators = 0;                          // indexed 0..generators-1
  std::vector<std::pair<int, int>> commuting;  // deduped pairs (a < b)
  std::optional<int> shift_step;  // index translation per minimal period
  bool commutes(int a, int b) const;
};

CoxeterPresentation presentation(const ContiguityGraph& g);

using Word = std::vector<int>;

// Confluent rewriting: delete adjacent equal generators, sort adjacent
// commuting generators by index.  Words are equal in the group iff their
// normal forms coincide.
Word normal_form(Word w, const CoxeterPresentation& p);

// All group elements by breadth-first closure of generator products;
// throws ValidationError when the group exceeds `cap` elements.
std::vector<Word> enumerate_group(const CoxeterPresentation& p, std::size_t cap);

// ---------------------------------------------------------------------------
// Case data: (k, l) and friends.

struct CaseData {
  SymCase case_ = SymCase::C0;
  SymSubtype subtype = SymSubtype::NotApplicable;
  int k = 0;    // saddle classes modulo the symmetries of f
  int ell = 0;  // Euler characteristic of the quotient contiguity graph
  bool has_saddles = false;
  bool has_elliptic_products = false;
  int k_gen = 0, ell_gen = 0;  // raw per-window counts (trivial symmetry)
  std::string label() const;
};

CaseData kl_invariants(const ContiguityGraph& g, const SymmetryClass& sym);

// Minimal index of a torsion-free subgroup (2 without elliptic products,
// 4 otherwise).
int minimal_index(const CaseData& cd);

// ---------------------------------------------------------------------------
// Orbifold structure of the Killing-preserving quotient.

struct OrbifoldData {
  enum class Surface { Sphere, ProjectivePlane, Disk, Torus, KleinBottle,
                       Moebius, Annulus };
  Surface surface = Surface::Sphere;
  int n_elliptic = 0;
  int p_int = 0;
  int p_bd = 0;
  std::string surface_str() const;
};

OrbifoldData orbifold(const CaseData& cd);

// ---------------------------------------------------------------------------
// Census of minimal smooth quotients.

struct QuotientSignature {
  int genus = 0;
  int punctures = 0;
  bool orientable = true;
  int chi() const {
    return orientable ? 2 - 2 * genus - punctures : 2 - genus - punctures;
  }
  std::string str() const;  // "(g;p)^+" / "(g;p)^-"
};

struct SubgroupSplit {
  int k1 = 0, ell1 = 0;  // in/out decomposition for the bilateral case
};

// Valid values of the ramification parameter j for the case row.
std::vector<int> valid_j(const CaseData& cd);

// Number of subgroups (up to conjugation) with the given j.
long long count_subgroups(const CaseData& cd, int j,
                          std::optional<SubgroupSplit> split = std::nullopt);

QuotientSignature signature(const CaseData& cd, int j);

// Euler characteristic common to the whole row.
int census_chi(const CaseData& cd);

// Total number of torsion-free index-nu^K subgroups of the
// Killing-preserving quotient group.
long long census_total(const CaseData& cd);

struct CensusRow {
  int j;
  long long count;
  QuotientSignature sig;
  int chi;
};

std::vector<CensusRow> census(const CaseData& cd,
                              std::optional<SubgroupSplit> split = std::nullopt);

// ---------------------------------------------------------------------------
// Character enumeration (brute force oracle for the subgroup counts).

// Abstract contiguity graph with an optional order-reversing involution.
struct SymmetricGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::vector<int>> tau;  // involution on {0..n-1}
};

SymmetricGraph symmetric_graph_of(const ContiguityGraph& g,
                                  const SymmetryClass& sym);

enum class CharCase { Trivial, C1a, C1b };

struct CharacterEnumeration {
  // each assignment lists +-1 values on the vertices, then on the extra
  // non-generic generator when the case has one
  std::vector<std::vector<int>> rho_assignments;
  long long rho_count = 0;
  long long omega_count = 0;
};

CharacterEnumeration enumerate_characters(const SymmetricGraph& g, CharCase c);

// Closed-form counts for the same data (valid for Trivial/C1a with at
// least one edge).
long long closed_form_rho(const SymmetricGraph& g, CharCase c);
long long closed_form_omega(const SymmetricGraph& g, CharCase c);

// Orbit counts of vertices/edges under tau (k = edge orbits, l = vertex
// orbits - edge orbits is not used here; l = component orbits).
struct GraphOrbitData {
  int vertex_orbits = 0;
  int edge_orbits = 0;
  int component_orbits = 0;
};
GraphOrbitData graph_orbits(const SymmetricGraph& g);

// ---------------------------------------------------------------------------
// Deformation spaces.

struct DeformationDims {
  int dim_der = 0;
  int dim_h1 = 0;
};

// Free fundamental groups (signature with punctures >= 1), the torus
// group (1;0)^+ and the Klein-bottle group (2;0)^-.  `twisted` selects a
// nontrivial orientation character on R.
DeformationDims deformation_dim(const QuotientSignature& sig, bool twisted);

}  // namespace lks
