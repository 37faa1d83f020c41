#pragma once

// Classification invariants of tori and Klein bottles carrying a Killing
// field: construction, validation, equivalence moves, canonical forms.

#include <optional>
#include <string>
#include <vector>

#include "lks/profile.hpp"

namespace lks {

// Non-elementary torus: (t0, tau, fbar, even marking).  fbar lives on
// R/Z (mass-1 normalization); marks are midpoints of components of
// {fbar != 0}, listed sorted in [0,1).
struct TorusInvariant {
  double t0 = 1.0;
  double tau = 0.0;  // representative in [0, t0)
  FunctionProfile fbar;
  std::vector<double> marks;
};

// Elementary torus (fbar vanishes nowhere, or flat): no marking needed.
struct ElementaryInvariant {
  double t0 = 1.0;
  double tau = 0.0;
  FunctionProfile fbar;
  bool flat = false;
};

// Klein bottle with a Killing foliation only (type 1): odd marking.
struct BottleInvariant1 {
  double t0 = 1.0;
  FunctionProfile fbar;  // on R/Z
  std::vector<double> marks;  // odd cardinality
};

// Klein bottle with a Killing field (type 2): fbar even on R/2Z,
// symmetric marking containing the two short leaves 0 and 1.
struct BottleInvariant2 {
  double t0 = 1.0;
  FunctionProfile fbar;  // on R/2Z, even
  std::vector<double> marks;  // subset of [0,2), contains 0 and 1
};

// Empty list iff the invariant is well-formed.
std::vector<std::string> validate_torus(const TorusInvariant& inv);
std::vector<std::string> validate_bottle1(const BottleInvariant1& inv);
std::vector<std::string> validate_bottle2(const BottleInvariant2& inv);

// The two moves on torus invariants.
TorusInvariant torus_flip(const TorusInvariant& inv);
TorusInvariant torus_shift(const TorusInvariant& inv, double y);
BottleInvariant1 bottle1_flip(const BottleInvariant1& inv);
BottleInvariant1 bottle1_shift(const BottleInvariant1& inv, double y);
BottleInvariant2 bottle2_swap(const BottleInvariant2& inv);

struct EquivalenceReport {
  bool equivalent = false;
  std::string witness;   // human description of the move chain
  double residual = 0.0; // sup distance achieved by the best move
  bool borderline = false;  // decision within a decade of the tolerance
};

EquivalenceReport equivalent_tori(const TorusInvariant& a,
                                  const TorusInvariant& b, double tol);
EquivalenceReport equivalent_bottles1(const BottleInvariant1& a,
                                      const BottleInvariant1& b, double tol);
EquivalenceReport equivalent_bottles2(const BottleInvariant2& a,
                                      const BottleInvariant2& b, double tol);

// Lexicographically extremal representative over both orientations and
// all zero-aligning shifts; idempotent and constant on move orbits.
TorusInvariant canonical_torus(const TorusInvariant& inv);

// Builds a validated invariant from a periodic profile: the profile is
// mass-normalized to period 1, marks are given in the original
// coordinates and checked against component midpoints.
TorusInvariant build_torus(const FunctionProfile& profile, double t0,
                           double tau, const std::vector<double>& marks);
BottleInvariant1 build_bottle1(const FunctionProfile& profile, double t0,
                               const std::vector<double>& marks);
// profile must be even and 2m-periodic; marks given on [0, m] in original
// coordinates, the symmetric completion is added automatically.
BottleInvariant2 build_bottle2(const FunctionProfile& profile, double t0,
                               const std::vector<double>& marks);

// Text block with keys type/t0/tau/function/domain/marks; numbers print
// with 17 significant digits so parse(print(x)) == x.
std::string serialize_torus(const TorusInvariant& inv);
std::string serialize_bottle1(const BottleInvariant1& inv);
std::string serialize_bottle2(const BottleInvariant2& inv);

struct AnyInvariant {
  enum class Type { Torus, Elementary, Bottle1, Bottle2 } type;
  TorusInvariant torus;
  BottleInvariant1 bottle1;
  BottleInvariant2 bottle2;
  ElementaryInvariant elementary;
};
AnyInvariant parse_invariant(const std::string& text);
AnyInvariant load_invariant(const std::string& path);

// Signs of fbar at the marks, in mark order.
std::vector<int> mark_signs(const FunctionProfile& fbar,
                            const std::vector<double>& marks);

}  // namespace lks
