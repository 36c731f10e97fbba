// Deterministic SVG pictures of rank-one objects: slice subdivisions and piecewise-linear graphs.
#pragma once

#include "divpoly/divisorial_polytope.hpp"
#include "divpoly/fansy.hpp"
#include "divpoly/support_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly::svg {

namespace detail {

inline constexpr double kWidth = 640;
inline constexpr double kMargin = 60;
inline constexpr double kStrip = 70;
inline constexpr double kGraph = 200;

inline std::string num(double x) {
  if (std::abs(x) < 5e-4) x = 0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

/// Maps [lo, hi] onto the drawing width.
struct Axis {
  double lo = -1, hi = 1;
  double x(double v) const { return kMargin + (v - lo) / (hi - lo) * (kWidth - 2 * kMargin); }
};

inline Axis axis_around(const std::vector<Rat>& pts) {
  if (pts.empty()) return {-2, 2};
  double lo = pts.front().to_double(), hi = lo;
  for (const auto& p : pts) {
    lo = std::min(lo, p.to_double());
    hi = std::max(hi, p.to_double());
  }
  return {std::floor(lo) - 1, std::ceil(hi) + 1};
}

class Doc {
 public:
  void line(double x1, double y1, double x2, double y2, const std::string& cls) {
    body_ << "  <line class=\"" << cls << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2)
          << "\"/>\n";
  }
  void dot(double x, double y, const std::string& cls) {
    body_ << "  <circle class=\"" << cls << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\"/>\n";
  }
  void text(double x, double y, const std::string& s, const std::string& cls = "label") {
    body_ << "  <text class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\">" << esc(s) << "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& cls) {
    body_ << "  <polyline class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << num(pts[i].first) << "," << num(pts[i].second);
    body_ << "\"/>\n";
  }
  std::string finish(double height) const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height) << "\" viewBox=\"0 0 "
      << num(kWidth) << " " << num(height) << "\">\n"
      << "  <style>line.axis{stroke:#000;stroke-width:1} line.grid{stroke:#ddd;stroke-width:0.5} "
         "line.tick{stroke:#000} polyline.graph{fill:none;stroke:#1f4e9a;stroke-width:2} "
         "circle.vertex{fill:#c0392b} circle.lattice{fill:#999} text{font-family:monospace;font-size:11px} "
         "text.mark{fill:#c0392b}</style>\n"
      << body_.str() << "</svg>\n";
    return o.str();
  }

 private:
  std::ostringstream body_;
};

inline void require_rank1(std::size_t n, const char* what) {
  if (n != 1) throw std::invalid_argument(std::string("render: ") + what + " has rank " + std::to_string(n) + ", only rank 1 is drawn");
}

/// One horizontal strip per slice: axis, cell vertices, and mark annotations on the rays.
inline double slice_strips(Doc& doc, const MarkedFansyDivisor& x, const Axis& ax, double y0) {
  std::vector<std::string> labels = x.support();
  if (labels.empty()) labels.push_back(kGenericPoint);
  std::string marks;
  for (const auto& m : x.marks()) marks += (marks.empty() ? "" : " ") + m.str();
  doc.text(10, y0 + 14, "marked: " + (marks.empty() ? std::string("none") : marks), "mark");
  double y = y0 + 30;
  for (const auto& label : labels) {
    double mid = y + kStrip / 2;
    doc.text(10, mid + 4, label);
    doc.line(kMargin, mid, kWidth - kMargin, mid, "axis");
    for (long long t = static_cast<long long>(std::ceil(ax.lo)); t <= static_cast<long long>(std::floor(ax.hi)); ++t) {
      doc.line(ax.x(static_cast<double>(t)), mid - 3, ax.x(static_cast<double>(t)), mid + 3, "tick");
    }
    for (const auto& vp : x.slice(label).vertices()) {
      const Rat& v = vp.vertices().front()[0];
      doc.dot(ax.x(v.to_double()), mid, "vertex");
      doc.text(ax.x(v.to_double()) - 8, mid - 10, v.str());
    }
    y += kStrip;
  }
  return y;
}

inline std::vector<Rat> slice_points(const MarkedFansyDivisor& x) {
  std::vector<Rat> pts{Rat(0)};
  for (const auto& [label, pc] : x.slices()) {
    for (const auto& vp : pc.vertices()) pts.push_back(vp.vertices().front()[0]);
  }
  return pts;
}

/// Graph panel with a lattice grid; `pts` are (x, y) breakpoints sorted by x.
inline double graph_panel(Doc& doc, const std::string& title, const std::vector<std::pair<Rat, Rat>>& pts, const Axis& ax, double ylo,
                          double yhi, double y0) {
  auto y = [&](double v) { return y0 + 20 + (yhi - v) / (yhi - ylo) * (kGraph - 30); };
  doc.text(10, y0 + 14, title);
  for (long long t = static_cast<long long>(std::ceil(ax.lo)); t <= static_cast<long long>(std::floor(ax.hi)); ++t) {
    doc.line(ax.x(static_cast<double>(t)), y(ylo), ax.x(static_cast<double>(t)), y(yhi), "grid");
  }
  for (long long t = static_cast<long long>(std::ceil(ylo)); t <= static_cast<long long>(std::floor(yhi)); ++t) {
    doc.line(ax.x(ax.lo), y(static_cast<double>(t)), ax.x(ax.hi), y(static_cast<double>(t)), "grid");
  }
  if (ylo <= 0 && 0 <= yhi) doc.line(ax.x(ax.lo), y(0), ax.x(ax.hi), y(0), "axis");
  std::vector<std::pair<double, double>> line;
  for (const auto& [a, b] : pts) line.emplace_back(ax.x(a.to_double()), y(b.to_double()));
  doc.polyline(line, "graph");
  for (const auto& [a, b] : pts) doc.dot(ax.x(a.to_double()), y(b.to_double()), "vertex");
  return y0 + kGraph;
}

inline std::pair<double, double> value_range(const std::vector<std::vector<std::pair<Rat, Rat>>>& all) {
  double lo = 0, hi = 0;
  for (const auto& g : all) {
    for (const auto& [a, b] : g) {
      lo = std::min(lo, b.to_double());
      hi = std::max(hi, b.to_double());
    }
  }
  return {std::floor(lo) - 1, std::ceil(hi) + 1};
}

}  // namespace detail

inline std::string render(const MarkedFansyDivisor& x) {
  detail::require_rank1(x.ambient_dim(), "marked fansy divisor");
  detail::Doc doc;
  double end = detail::slice_strips(doc, x, detail::axis_around(detail::slice_points(x)), 0);
  return doc.finish(end + 10);
}

/// Slices followed by the graph of h_P over a window around the slice vertices.
inline std::string render(const SupportFunction& h) {
  detail::require_rank1(h.ambient_dim(), "support function");
  detail::Axis ax = detail::axis_around(detail::slice_points(h.base()));
  detail::Doc doc;
  double y = detail::slice_strips(doc, h.base(), ax, 0);
  std::vector<std::string> labels = h.support();
  std::vector<std::vector<std::pair<Rat, Rat>>> graphs;
  for (const auto& label : labels) {
    std::set<Rat> xs{Rat(BigInt(static_cast<long long>(ax.lo))), Rat(BigInt(static_cast<long long>(ax.hi)))};
    for (const auto& vp : h.base().slice(label).vertices()) xs.insert(vp.vertices().front()[0]);
    std::vector<std::pair<Rat, Rat>> g;
    for (const auto& v : xs) g.emplace_back(v, h.value(label, Vec{v}));
    graphs.push_back(g);
  }
  auto [lo, hi] = detail::value_range(graphs);
  for (std::size_t i = 0; i < labels.size(); ++i) y = detail::graph_panel(doc, "h_" + labels[i], graphs[i], ax, lo, hi, y);
  return doc.finish(y + 10);
}

/// Graph of Psi_P over Box for every point of the support, with the lattice grid.
inline std::string render(const DivisorialPolytope& psi) {
  detail::require_rank1(psi.rank(), "divisorial polytope");
  std::vector<Rat> ends;
  for (const auto& v : psi.box().vertices()) ends.push_back(v[0]);
  detail::Axis ax = detail::axis_around(ends);
  std::vector<std::string> labels = psi.support();
  std::vector<std::vector<std::pair<Rat, Rat>>> graphs;
  for (const auto& label : labels) {
    std::set<Rat> xs;
    for (const auto& u : psi.graph_vertices(label)) xs.insert(u[0]);
    std::vector<std::pair<Rat, Rat>> g;
    for (const auto& u : xs) g.emplace_back(u, psi.value(label, Vec{u}));
    graphs.push_back(g);
  }
  auto [lo, hi] = detail::value_range(graphs);
  detail::Doc doc;
  double y = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) y = detail::graph_panel(doc, "Psi_" + labels[i], graphs[i], ax, lo, hi, y);
  if (labels.empty()) doc.text(10, 20, "Psi = 0");
  return doc.finish(std::max(y, 40.0) + 10);
}

}  // namespace divpoly::svg
