#pragma once

// Cyclic/linear sign sequences: adjacent-equal-pair cancellation, cone
// enrollment, and the connected-component indices of the metric space
// for tori (r) and Klein bottles (n_abs, m).

#include <optional>
#include <string>
#include <vector>

#include "lks/classify.hpp"

namespace lks {

struct SignSeq {
  std::vector<int> signs;  // entries +1 / -1
  bool cyclic = false;

  std::string str() const;
  static SignSeq from_string(const std::string& s);
};

// Deletes the first adjacent equal pair and iterates; cyclic sequences
// additionally cancel across the seam.  The result alternates.
SignSeq reduce(const SignSeq& seq);

// (1/4) sum_j (-1)^j sign_j over a linear sequence (j starting at 1),
// counted in quarter turns.  |quarter_turns| equals the reduced length.
struct Enrollment {
  int quarter_turns = 0;  // signed sum
  double turns() const { return quarter_turns / 4.0; }
};
Enrollment enrollment(const SignSeq& seq);

struct TorusComponentIndex {
  int r = 0;
  int k_plus = 0, k_minus = 0;  // band decomposition, |k+ - k-| = 2r
};

// r = (cyclic reduced length)/2 from the signs of fbar at the marks;
// the sum formula and the band decomposition are cross-checked.
TorusComponentIndex torus_r(const TorusInvariant& inv);

enum class TorusComponentSet { AllComponents, FlatOnly };
TorusComponentSet torus_component_set(const FunctionProfile& p);

struct BottleComponentIndex {
  int n_abs = 0;
  std::optional<int> m_bar;  // defined when n_abs is even
  bool temporal_orientable = false;
  bool spatial_orientable = false;
};

BottleComponentIndex bottle1_component(const BottleInvariant1& inv);
BottleComponentIndex bottle2_nabs(const BottleInvariant2& inv);

// Combinatorial core of the type-2 index: `signs` lists the values of
// fbar at the marks on the fundamental half, the two short leaves first
// and last.
BottleComponentIndex bottle2_nabs_from_signs(const std::vector<int>& signs);

// Realizable component sets over a whole profile.
std::vector<std::pair<int, int>> bottle1_component_set(const FunctionProfile& p);

struct Bottle2ComponentSet {
  enum class Kind { Single, EvenByParity, All } kind = Kind::Single;
  int m_bar = 0;     // for Single / EvenByParity
  std::string str() const;
};

// f must be even, 2m-periodic with f(0) f(m) != 0 (normalized half period m).
Bottle2ComponentSet bottle2_component_set(const FunctionProfile& p);

}  // namespace lks
