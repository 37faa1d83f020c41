#pragma once

// Deterministic hierarchical text output (fixed key order, fixed float
// formatting) and dependency-free SVG emission.

#include <string>
#include <vector>

#include "lks/geodesics.hpp"

namespace lks {

// Indented `key = value` document; sections end with ':'.
class Doc {
 public:
  void section(const std::string& name);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, const char* value);
  void kv(const std::string& key, double v);
  void kv(const std::string& key, long long v);
  void kv(const std::string& key, int v);
  void kv(const std::string& key, bool v);
  void line(const std::string& text);
  void push() { ++indent_; }
  void pop() { --indent_; }
  const std::string& str() const { return out_; }

  static std::string num(double v);  // %.12g

 private:
  void emit(const std::string& s);
  std::string out_;
  int indent_ = 0;
};

// Phase plot (x horizontal, y vertical) with the zero set of f drawn as
// vertical lines, marks as ticks, and tangency points highlighted.
std::string svg_phase_plot(const Trajectory& traj, const FunctionProfile& prof,
                           const std::vector<double>& tangency_x,
                           const std::string& title);

// t -> x plot of a trajectory (used when the y range degenerates).
std::string trajectory_table(const Trajectory& traj, const FunctionProfile& prof);

}  // namespace lks
