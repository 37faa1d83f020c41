#include "lks/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lks {

std::string Doc::num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void Doc::emit(const std::string& s) {
  for (int i = 0; i < indent_; ++i) out_ += "  ";
  out_ += s;
  out_ += '\n';
}

void Doc::section(const std::string& name) { emit(name + ":"); }
void Doc::kv(const std::string& key, const std::string& value) {
  emit(key + " = " + value);
}
void Doc::kv(const std::string& key, const char* value) {
  emit(key + " = " + value);
}
void Doc::kv(const std::string& key, double v) { emit(key + " = " + num(v)); }
void Doc::kv(const std::string& key, long long v) {
  emit(key + " = " + std::to_string(v));
}
void Doc::kv(const std::string& key, int v) {
  emit(key + " = " + std::to_string(v));
}
void Doc::kv(const std::string& key, bool v) {
  emit(key + std::string(" = ") + (v ? "true" : "false"));
}
void Doc::line(const std::string& text) { emit(text); }

// ---------------------------------------------------------------------------

std::string trajectory_table(const Trajectory& traj,
                             const FunctionProfile& prof) {
  std::string out = "t x y p q C E\n";
  char buf[256];
  for (const GeodesicState& s : traj.samples) {
    std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g %.12g %.12g %.12g %.12g\n",
                  s.t, s.x, s.y, s.p, s.q, s.clairaut(prof), s.energy(prof));
    out += buf;
  }
  return out;
}

namespace {

struct Mapper {
  double x0, x1, y0, y1;
  double W = 800, H = 560, m = 50;
  double px(double x) const { return m + (x - x0) / (x1 - x0) * (W - 2 * m); }
  double py(double y) const { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); }
};

void fmt(std::string& s, const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  s += buf;
}

}  // namespace

std::string svg_phase_plot(const Trajectory& traj, const FunctionProfile& prof,
                           const std::vector<double>& tangency_x,
                           const std::string& title) {
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const GeodesicState& s : traj.samples) {
    x0 = std::min(x0, s.x);
    x1 = std::max(x1, s.x);
    y0 = std::min(y0, s.y);
    y1 = std::max(y1, s.y);
  }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  double padx = 0.05 * (x1 - x0), pady = 0.05 * (y1 - y0);
  Mapper mp{x0 - padx, x1 + padx, y0 - pady, y1 + pady};

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
       "viewBox=\"0 0 800 560\">\n";
  s += "<rect width=\"800\" height=\"560\" fill=\"white\"/>\n";
  s += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
       "font-family=\"sans-serif\">" + title + "</text>\n";

  // axes
  fmt(s, "<line x1=\"%g\" y1=\"%g\" ", mp.px(mp.x0), mp.py(mp.y0));
  fmt(s, "x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", mp.px(mp.x1), mp.py(mp.y0));
  fmt(s, "<line x1=\"%g\" y1=\"%g\" ", mp.px(mp.x0), mp.py(mp.y0));
  fmt(s, "x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n", mp.px(mp.x0), mp.py(mp.y1));

  // zero set of f: vertical dashed lines
  try {
    for (const Zero& z : find_zeros(prof)) {
      if (z.x0 < mp.x0 || z.x0 > mp.x1) continue;
      fmt(s, "<line x1=\"%g\" y1=\"%g\" ", mp.px(z.x0), mp.py(mp.y0));
      fmt(s, "x2=\"%g\" y2=\"%g\" stroke=\"#999\" "
             "stroke-dasharray=\"4,3\"/>\n",
          mp.px(z.x0), mp.py(mp.y1));
    }
  } catch (const std::exception&) {
    // plateaued profiles: skip the annotation
  }

  // trajectory
  s += "<polyline fill=\"none\" stroke=\"#0055aa\" stroke-width=\"1.2\" points=\"";
  std::size_t stride = std::max<std::size_t>(1, traj.samples.size() / 4000);
  for (std::size_t i = 0; i < traj.samples.size(); i += stride) {
    fmt(s, "%g,%g ", mp.px(traj.samples[i].x), mp.py(traj.samples[i].y));
  }
  s += "\"/>\n";

  for (double tx : tangency_x) {
    // mark the tangency on the trajectory (nearest sample in x)
    const GeodesicState* best = nullptr;
    for (const GeodesicState& st : traj.samples)
      if (!best || std::abs(st.x - tx) < std::abs(best->x - tx)) best = &st;
    if (best) {
      fmt(s, "<circle cx=\"%g\" cy=\"%g\" r=\"5\" fill=\"#cc2200\"/>\n",
          mp.px(best->x), mp.py(best->y));
    }
  }

  char lab[160];
  std::snprintf(lab, sizeof lab,
                "<text x=\"%g\" y=\"545\" font-size=\"12\" "
                "font-family=\"sans-serif\">x range [%.6g, %.6g], y range "
                "[%.6g, %.6g]</text>\n",
                mp.px(mp.x0), x0, x1, y0, y1);
  s += lab;
  s += "</svg>\n";
  return s;
}

}  // namespace lks
