#include "lks/signseq.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <deque>

#include "lks/errors.hpp"

namespace lks {

std::string SignSeq::str() const {
  std::string out = cyclic ? "cyclic:" : "linear:";
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

SignSeq SignSeq::from_string(const std::string& s) {
  SignSeq seq;
  std::size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw ValidationError("sign sequence needs a 'cyclic:' or 'linear:' prefix");
  std::string prefix = s.substr(0, colon);
  if (prefix == "cyclic")
    seq.cyclic = true;
  else if (prefix == "linear")
    seq.cyclic = false;
  else
    throw ValidationError("unknown sign sequence prefix '" + prefix + "'");
  for (char c : s.substr(colon + 1)) {
    if (c == '+')
      seq.signs.push_back(1);
    else if (c == '-')
      seq.signs.push_back(-1);
    else if (!std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError("sign sequence entries must be '+' or '-'");
  }
  return seq;
}

namespace {

void reduce_linear_inplace(std::deque<int>& d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] == d[i + 1]) {
        d.erase(d.begin() + i, d.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

SignSeq reduce(const SignSeq& seq) {
  std::deque<int> d(seq.signs.begin(), seq.signs.end());
  reduce_linear_inplace(d);
  if (seq.cyclic) {
    while (d.size() >= 2 && d.front() == d.back()) {
      d.pop_front();
      d.pop_back();
      reduce_linear_inplace(d);
    }
  }
  SignSeq out;
  out.cyclic = seq.cyclic;
  out.signs.assign(d.begin(), d.end());
  return out;
}

Enrollment enrollment(const SignSeq& seq) {
  if (seq.cyclic) throw ValidationError("enrollment is defined for linear sequences");
  Enrollment e;
  for (std::size_t j = 0; j < seq.signs.size(); ++j) {
    int parity = (j + 1) % 2 == 0 ? 1 : -1;  // (-1)^j with 1-based j
    e.quarter_turns += parity * seq.signs[j];
  }
  return e;
}

TorusComponentIndex torus_r(const TorusInvariant& inv) {
  TorusComponentIndex out;
  std::vector<int> signs = mark_signs(inv.fbar, inv.marks);
  SignSeq cyc{signs, true};
  SignSeq red = reduce(cyc);
  int L = static_cast<int>(red.signs.size());

  int sum = 0;
  for (std::size_t j = 0; j < signs.size(); ++j) {
    int parity = (j + 1) % 2 == 0 ? 1 : -1;
    sum += parity * signs[j];
  }
  int n = static_cast<int>(signs.size());
  out.r = L / 2;
  out.k_plus = (n + sum) / 2;
  out.k_minus = (n - sum) / 2;
  if (std::abs(sum) != L)
    throw ValidationError("sign-sequence identity violated: |sum| != reduced length");
  return out;
}

TorusComponentSet torus_component_set(const FunctionProfile& p) {
  if (!p.domain().is_periodic())
    throw ValidationError("torus component set needs a periodic profile");
  ComponentSet cs = components(p);
  bool has_pos = false, has_neg = false;
  for (const Component& c : cs.comps) (c.sign > 0 ? has_pos : has_neg) = true;
  return has_pos && has_neg ? TorusComponentSet::AllComponents
                            : TorusComponentSet::FlatOnly;
}

BottleComponentIndex bottle1_component(const BottleInvariant1& inv) {
  BottleComponentIndex out;
  out.n_abs = 0;
  int negatives = 0;
  for (int s : mark_signs(inv.fbar, inv.marks))
    if (s < 0) ++negatives;
  out.temporal_orientable = negatives % 2 == 0;
  out.spatial_orientable = !out.temporal_orientable;
  out.m_bar = out.temporal_orientable ? 0 : 1;
  return out;
}

BottleComponentIndex bottle2_nabs_from_signs(const std::vector<int>& signs) {
  int k = static_cast<int>(signs.size());
  if (k < 2) throw ValidationError("type-2 bottle needs marks at both short leaves");

  auto sbit = [&](int j) { return signs[j] > 0 ? 0 : 1; };  // (-1)^s encoding
  int s1 = sbit(0), sk = sbit(k - 1);

  SignSeq interior{{}, false}, with_first{{}, false};
  for (int j = 1; j + 1 < k; ++j) interior.signs.push_back(signs[j]);
  for (int j = 0; j + 1 < k; ++j) with_first.signs.push_back(signs[j]);

  BottleComponentIndex out;
  if ((s1 + sk + k) % 2 == 0)
    out.n_abs = static_cast<int>(reduce(interior).signs.size());
  else
    out.n_abs = static_cast<int>(reduce(with_first).signs.size());

  if (out.n_abs % 2 != (s1 + sk) % 2)
    throw ValidationError("n_abs parity check failed");

  if (out.n_abs % 2 == 0) {
    out.temporal_orientable = signs[0] < 0 && signs[k - 1] < 0;
    out.spatial_orientable = signs[0] > 0 && signs[k - 1] > 0;
    out.m_bar = out.temporal_orientable ? 0 : 1;
  }
  return out;
}

BottleComponentIndex bottle2_nabs(const BottleInvariant2& inv) {
  // marks on the fundamental half [0,1], increasing; first and last are
  // the two short leaves
  std::vector<double> half;
  for (double m : inv.marks)
    if (m <= 1.0 + 1e-9) half.push_back(m);
  return bottle2_nabs_from_signs(mark_signs(inv.fbar, half));
}

std::vector<std::pair<int, int>> bottle1_component_set(const FunctionProfile& p) {
  ComponentSet cs = components(p);
  bool has_pos = false, has_neg = false;
  for (const Component& c : cs.comps) (c.sign > 0 ? has_pos : has_neg) = true;
  if (has_pos && has_neg) return {{0, 0}, {0, 1}};
  if (has_neg) return {{0, 1}};
  return {{0, 0}};
}

std::string Bottle2ComponentSet::str() const {
  switch (kind) {
    case Kind::Single:
      return "{(0," + std::to_string(m_bar) + ")}";
    case Kind::EvenByParity:
      return "2Z x {" + std::to_string(m_bar) + "}";
    case Kind::All:
      return "Z x Z/2Z";
  }
  return "";
}

Bottle2ComponentSet bottle2_component_set(const FunctionProfile& p) {
  if (!p.domain().is_periodic())
    throw ValidationError("type-2 bottle component set needs a periodic profile");
  double T = p.domain().period;  // = 2m
  double m = 0.5 * T;
  double tol_id = p.tol() * std::max(1.0, p.scale());
  for (int i = 0; i < 257; ++i) {
    double x = (i + 0.5) * T / 257;
    if (std::abs(p.f(-x) - p.f(x)) > tol_id)
      throw ValidationError("profile is not even");
  }
  double f0 = p.f(0.0), fm = p.f(m);
  if (std::abs(f0) <= tol_id || std::abs(fm) <= tol_id)
    throw ValidationError("profile must be nonzero at the two fixed leaves");

  bool has_pos = false, has_neg = false;
  for (const Component& c : components(p).comps)
    (c.sign > 0 ? has_pos : has_neg) = true;

  Bottle2ComponentSet out;
  if (!(has_pos && has_neg)) {
    out.kind = Bottle2ComponentSet::Kind::Single;
    out.m_bar = has_neg ? 0 : 1;
    return out;
  }
  if (f0 * fm > 0) {
    out.kind = Bottle2ComponentSet::Kind::EvenByParity;
    out.m_bar = f0 < 0 ? 0 : 1;
    return out;
  }
  out.kind = Bottle2ComponentSet::Kind::All;
  return out;
}

}  // namespace lks
