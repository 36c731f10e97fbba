// Divisorial polytopes: a lattice polytope Box in M together with concave
// piecewise affine functions Psi_P on Box, one per point of the base curve.
#pragma once

#include "divpoly/lattice.hpp"
#include "divpoly/pdiv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

/// u -> <gradient, u> + constant
struct Affine {
  Vec gradient;
  Rat constant;
  Rat operator()(const Vec& u) const { return dot(gradient, u) + constant; }
  friend bool operator==(const Affine&, const Affine&) = default;
  friend bool operator<(const Affine& a, const Affine& b) {
    if (a.gradient != b.gradient) return a.gradient < b.gradient;
    return a.constant < b.constant;
  }
};

/// Pointwise minimum of affine functions.
using Piece = std::vector<Affine>;

inline Rat eval_piece(const Piece& p, const Vec& u) {
  if (p.empty()) return 0;
  Rat m = p.front()(u);
  for (const auto& a : p) m = std::min(m, a(u));
  return m;
}

/// Label used for a point of the curve outside every support.
inline const std::string kGenericPoint = "generic";

namespace detail {

inline Vec lift_row(const Vec& facet, const Rat& t_coeff) {
  // (a, c) -> (a, t_coeff, c)
  Vec r(facet.begin(), facet.end() - 1);
  r.push_back(t_coeff);
  r.push_back(facet.back());
  return r;
}

/// {(u, t) : u in box, t <= piece(u)}
inline Polyhedron hypograph(const Polyhedron& box, const Piece& piece) {
  const std::size_t n = box.ambient_dim();
  Matrix ineqs, eqs;
  for (const auto& f : box.facets()) ineqs.push_back(lift_row(f, 0));
  for (const auto& e : box.equations()) eqs.push_back(lift_row(e, 0));
  Piece p = piece.empty() ? Piece{{zero_vec(n), Rat(0)}} : piece;
  for (const auto& a : p) {
    if (a.gradient.size() != n) throw std::invalid_argument("piece gradient rank mismatch");
    Vec row = a.gradient;
    row.push_back(-1);
    row.push_back(a.constant);
    ineqs.push_back(row);
  }
  return Polyhedron::from_homogeneous(ineqs, eqs, n + 1);
}

/// Canonical affine pieces read off the upper facets of a hypograph.
inline Piece piece_from_hypograph(const Polyhedron& h) {
  const std::size_t n = h.ambient_dim() - 1;
  Piece out;
  for (const auto& f : h.facets()) {
    const Rat& at = f[n];
    if (at.sign() >= 0) continue;
    Rat s = Rat(-1) / at;
    Vec g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n));
    out.push_back({s * g, s * f[n + 1]});
  }
  if (out.empty()) {
    // hypograph with no upper facet can only come from a degenerate box; keep the function explicit
    throw std::domain_error("piece_from_hypograph: unbounded above");
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_zero_piece(const Piece& p) {
  return p.size() == 1 && is_zero(p.front().gradient) && p.front().constant.is_zero();
}

}  // namespace detail

class DivisorialPolytope {
 public:
  DivisorialPolytope() = default;
  DivisorialPolytope(Curve curve, Polyhedron box, const std::map<std::string, Piece>& pieces)
      : curve_(std::move(curve)), box_(std::move(box)) {
    if (box_.is_empty() || !box_.is_bounded()) throw std::invalid_argument("DivisorialPolytope: box must be a nonempty polytope");
    for (const auto& v : box_.vertices()) {
      if (!is_integral(v)) throw std::invalid_argument("DivisorialPolytope: box vertex " + to_string(v) + " is not a lattice point");
    }
    zero_hypograph_ = detail::hypograph(box_, {});
    for (const auto& [label, p] : pieces) {
      if (!curve_.has_point(label)) throw std::invalid_argument("DivisorialPolytope: unknown point '" + label + "'");
      Polyhedron h = detail::hypograph(box_, p);
      Piece c = detail::piece_from_hypograph(h);
      if (detail::is_zero_piece(c)) continue;
      pieces_.emplace(label, std::move(c));
      hypographs_.emplace(label, std::move(h));
    }
  }

  const Curve& curve() const { return curve_; }
  const Polyhedron& box() const { return box_; }
  std::size_t rank() const { return box_.ambient_dim(); }
  /// Nontrivial pieces in canonical form.
  const std::map<std::string, Piece>& pieces() const { return pieces_; }
  std::vector<std::string> support() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : pieces_) out.push_back(k);
    return out;
  }
  Piece piece(const std::string& label) const {
    auto it = pieces_.find(label);
    return it == pieces_.end() ? Piece{{zero_vec(rank()), Rat(0)}} : it->second;
  }
  Rat value(const std::string& label, const Vec& u) const {
    auto it = pieces_.find(label);
    return it == pieces_.end() ? Rat(0) : eval_piece(it->second, u);
  }
  QDivisor operator()(const Vec& u) const {
    QDivisor d;
    for (const auto& [k, p] : pieces_) d.set(k, eval_piece(p, u));
    return d;
  }
  Rat degree_at(const Vec& u) const { return degree((*this)(u)); }

  const Polyhedron& hypograph(const std::string& label) const {
    auto it = hypographs_.find(label);
    return it == hypographs_.end() ? zero_hypograph_ : it->second;
  }

  /// Points u of Box with (u, Psi_P(u)) a vertex of the graph.
  Matrix graph_vertices(const std::string& label) const {
    Matrix out;
    for (const auto& v : hypograph(label).vertices()) out.push_back(drop_last(v));
    return out;
  }

  /// Linearity regions of Psi_P with their affine function.
  std::vector<std::pair<Affine, Polyhedron>> cells(const std::string& label) const {
    Piece p = piece(label);
    std::vector<std::pair<Affine, Polyhedron>> out;
    const std::size_t n = rank();
    for (const auto& a : p) {
      Matrix ineqs = box_.facets(), eqs = box_.equations();
      for (const auto& b : p) {
        if (b == a) continue;
        // b(u) - a(u) >= 0
        Vec row = b.gradient - a.gradient;
        row.push_back(b.constant - a.constant);
        ineqs.push_back(row);
      }
      out.emplace_back(a, Polyhedron::from_homogeneous(ineqs, eqs, n));
    }
    return out;
  }

  /// Maximal cells of the common refinement of all piece subdivisions.
  std::vector<Polyhedron> refinement_cells() const {
    std::vector<Polyhedron> cur{box_};
    for (const auto& [label, p] : pieces_) {
      std::set<Polyhedron> next;
      for (const auto& c : cur) {
        for (const auto& [a, cell] : cells(label)) {
          Polyhedron x = intersection(c, cell);
          if (!x.is_empty() && x.dim() == box_.dim()) next.insert(x);
        }
      }
      cur.assign(next.begin(), next.end());
    }
    return cur;
  }
  Matrix refinement_vertices() const {
    std::set<Vec> vs;
    for (const auto& c : refinement_cells()) vs.insert(c.vertices().begin(), c.vertices().end());
    return Matrix(vs.begin(), vs.end());
  }

  friend bool operator==(const DivisorialPolytope& a, const DivisorialPolytope& b) {
    return a.curve_ == b.curve_ && a.box_ == b.box_ && a.pieces_ == b.pieces_;
  }

 private:
  Curve curve_;
  Polyhedron box_ = Polyhedron::empty(0);
  std::map<std::string, Piece> pieces_;
  std::map<std::string, Polyhedron> hypographs_;
  Polyhedron zero_hypograph_ = Polyhedron::empty(1);
};

struct ValidationReport {
  Verdict verdict = Verdict::Yes;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void fail(std::string msg) {
    verdict = Verdict::No;
    failures.push_back(std::move(msg));
  }
  void unknown(std::string msg) {
    if (verdict == Verdict::Yes) verdict = Verdict::Unknown;
    notes.push_back(std::move(msg));
  }
};

/// True iff u lies in the relative interior of the polytope p.
inline bool in_relative_interior(const Polyhedron& p, const Vec& u) {
  if (!p.contains(u)) return false;
  Vec h = append(u, 1);
  for (const auto& f : p.facets()) {
    if (dot(f, h).is_zero()) return false;
  }
  return true;
}

inline ValidationReport validate(const DivisorialPolytope& psi) {
  ValidationReport rep;
  const Polyhedron& box = psi.box();
  for (const auto& v : psi.refinement_vertices()) {
    Rat d = psi.degree_at(v);
    if (d.sign() < 0) rep.fail("deg Psi(" + to_string(v) + ") = " + d.str() + " < 0");
    else if (d.is_zero() && in_relative_interior(box, v) && box.dim() > 0) {
      rep.fail("deg Psi vanishes at interior point " + to_string(v));
    }
  }
  if (box.dim() > 0 && !psi.degree_at(box.relative_interior_point()).sign()) {
    rep.fail("deg Psi vanishes on the interior of the box");
  }
  for (const auto& v : box.vertices()) {
    Rat d = psi.degree_at(v);
    if (d.sign() > 0) continue;
    if (d.sign() < 0) continue;  // already reported
    Verdict pv = has_principal_multiple(psi.curve(), psi(v));
    if (pv == Verdict::No) rep.fail("Psi(" + to_string(v) + ") has degree 0 but no principal multiple");
    else if (pv == Verdict::Unknown) rep.unknown("principality of Psi(" + to_string(v) + ") undecided in positive genus");
  }
  for (const auto& [label, p] : psi.pieces()) {
    for (const auto& g : psi.hypograph(label).vertices()) {
      if (!is_integral(g)) rep.fail("graph of Psi_" + label + " has non-lattice vertex " + to_string(g));
    }
  }
  return rep;
}

inline void require_valid(const DivisorialPolytope& psi, const char* what) {
  ValidationReport r = validate(psi);
  if (r.verdict == Verdict::No) {
    throw std::invalid_argument(std::string(what) + ": invalid divisorial polytope: " + r.failures.front());
  }
}

/// Sup-convolution: boxes add, hypographs add.
inline DivisorialPolytope add(const DivisorialPolytope& a, const DivisorialPolytope& b) {
  if (!(a.curve() == b.curve())) throw std::invalid_argument("add: different curves");
  if (a.rank() != b.rank()) throw std::invalid_argument("add: rank mismatch");
  Polyhedron box = minkowski_sum(a.box(), b.box());
  std::set<std::string> labels;
  for (const auto& l : a.support()) labels.insert(l);
  for (const auto& l : b.support()) labels.insert(l);
  std::map<std::string, Piece> pieces;
  for (const auto& l : labels) {
    pieces.emplace(l, detail::piece_from_hypograph(minkowski_sum(a.hypograph(l), b.hypograph(l))));
  }
  return DivisorialPolytope(a.curve(), box, pieces);
}

/// (k Psi)(u) = k Psi(u / k) on k Box.
inline DivisorialPolytope scale(long long k, const DivisorialPolytope& a) {
  if (k <= 0) throw std::invalid_argument("scale: factor must be positive");
  std::map<std::string, Piece> pieces;
  for (const auto& [l, p] : a.pieces()) {
    Piece q;
    for (const auto& f : p) q.push_back({f.gradient, Rat(k) * f.constant});
    pieces.emplace(l, q);
  }
  return DivisorialPolytope(a.curve(), a.box().scale(Rat(k)), pieces);
}

/// conv of the graph of sum_{P in I} Psi_P and of the graph of -sum_{P not in I} Psi_P.
inline Polyhedron delta_polytope(const DivisorialPolytope& psi, const std::set<std::string>& I) {
  Matrix pts;
  for (const auto& u : psi.refinement_vertices()) {
    Rat up, down;
    for (const auto& [l, p] : psi.pieces()) {
      if (I.count(l)) up += eval_piece(p, u);
      else down -= eval_piece(p, u);
    }
    pts.push_back(append(u, up));
    pts.push_back(append(u, down));
  }
  return Polyhedron::from_generators(pts, {}, {}, psi.rank() + 1);
}

inline Rat piece_min(const DivisorialPolytope& psi, const std::string& label) {
  Matrix gv = psi.graph_vertices(label);
  Rat m = psi.value(label, gv.front());
  for (const auto& u : gv) m = std::min(m, psi.value(label, u));
  return m;
}

/// conv of the graph of Psi_P together with Box x {min Psi_P}.
inline Polyhedron tilde_delta(const DivisorialPolytope& psi, const std::string& label) {
  Matrix pts;
  for (const auto& v : psi.hypograph(label).vertices()) pts.push_back(v);
  Rat m = piece_min(psi, label);
  for (const auto& u : psi.box().vertices()) pts.push_back(append(u, m));
  return Polyhedron::from_generators(pts, {}, {}, psi.rank() + 1);
}

inline BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// D^{m+1} = (m+1)! vol Delta(Psi, I); throws if the volume depends on I.
inline Rat degree_number(const DivisorialPolytope& psi) {
  require_valid(psi, "degree_number");
  std::vector<std::set<std::string>> sets{{}};
  std::set<std::string> all;
  for (const auto& l : psi.support()) {
    sets.push_back({l});
    all.insert(l);
  }
  sets.push_back(all);
  Rat vol = euclidean_volume(delta_polytope(psi, all));
  for (const auto& I : sets) {
    if (euclidean_volume(delta_polytope(psi, I)) != vol) {
      throw std::logic_error("degree_number: volume of Delta(Psi, I) depends on I");
    }
  }
  return Rat(factorial(psi.rank() + 1)) * vol;
}

struct SmoothWitness {
  std::string point;  // support label, kGenericPoint, or "P" for any point
  Vec v;
  friend bool operator==(const SmoothWitness&, const SmoothWitness&) = default;
};

namespace detail {

inline bool is_graph_vertex(const DivisorialPolytope& psi, const std::string& label, const Vec& v) {
  Matrix gv = psi.graph_vertices(label);
  return std::find(gv.begin(), gv.end(), v) != gv.end();
}

inline bool delta_smooth_at(const DivisorialPolytope& psi, const std::string& label, const Vec& v) {
  Polyhedron d = delta_polytope(psi, {label});
  Vec top = append(v, psi.value(label, v));
  const auto& vs = d.vertices();
  if (std::find(vs.begin(), vs.end(), top) == vs.end()) return false;
  if (!is_integral(top)) return false;
  return is_smooth_at_vertex(d, top);
}

/// v lies in exactly one linearity cell of Psi_P, and that cell has integral gradient.
inline bool single_integral_cell(const DivisorialPolytope& psi, const std::string& label, const Vec& v) {
  Piece p = psi.piece(label);
  Rat val = eval_piece(p, v);
  int count = 0;
  bool integral = true;
  for (const auto& a : p) {
    if (a(v) == val) {
      ++count;
      integral = integral && is_integral(a.gradient);
    }
  }
  return count == 1 && integral;
}

}  // namespace detail

/// Smoothness at (P, v) for a graph vertex (v, Psi_P(v)).
inline Verdict smooth_at(const DivisorialPolytope& psi, const std::string& label, const Vec& v) {
  if (!detail::is_graph_vertex(psi, label, v)) {
    throw std::invalid_argument("smooth_at: (" + to_string(v) + ", Psi_" + label + ") is not a graph vertex");
  }
  Rat d = psi.degree_at(v);
  if (d.sign() > 0) return verdict(detail::delta_smooth_at(psi, label, v));
  if (d.sign() < 0) throw std::invalid_argument("smooth_at: negative degree");
  if (psi.curve().genus() != 0) return Verdict::No;
  std::vector<std::string> bad;
  for (const auto& l : psi.support()) {
    if (!detail::single_integral_cell(psi, l, v)) bad.push_back(l);
  }
  if (bad.size() > 2) return Verdict::No;
  std::vector<std::string> candidates = bad;
  if (bad.size() < 2) {
    for (const auto& l : psi.support()) {
      if (std::find(candidates.begin(), candidates.end(), l) == candidates.end()) candidates.push_back(l);
    }
    candidates.push_back(kGenericPoint);
  }
  for (const auto& p1 : candidates) {
    // with two bad points, P1 must be one of them; with fewer, P2 absorbs the rest
    if (detail::delta_smooth_at(psi, p1, v)) return Verdict::Yes;
  }
  return Verdict::No;
}

struct SmoothnessReport {
  Verdict verdict = Verdict::Yes;
  std::vector<SmoothWitness> witnesses;
};

/// Checks every graph vertex of every piece, and for a point outside the support every vertex of Box.
inline SmoothnessReport is_smooth(const DivisorialPolytope& psi) {
  require_valid(psi, "is_smooth");
  SmoothnessReport rep;
  std::set<Vec> degenerate_done;
  auto check = [&](const std::string& label, const Vec& v) {
    bool zero = psi.degree_at(v).is_zero();
    if (zero && degenerate_done.count(v)) return;
    Verdict s = smooth_at(psi, label, v);
    if (zero) degenerate_done.insert(v);
    if (s == Verdict::Yes) return;
    rep.verdict = rep.verdict && s;
    rep.witnesses.push_back({zero ? std::string("P") : label, v});
  };
  for (const auto& l : psi.support()) {
    for (const auto& v : psi.graph_vertices(l)) check(l, v);
  }
  for (const auto& v : psi.box().vertices()) check(kGenericPoint, v);
  std::sort(rep.witnesses.begin(), rep.witnesses.end(), [](const SmoothWitness& a, const SmoothWitness& b) {
    if (a.point != b.point) return a.point < b.point;
    return b.v < a.v;
  });
  return rep;
}

/// Only needs lattice graphs, so degenerate (e.g. trivial) Psi are accepted too.
inline UniPoly ehrhart_psi(const DivisorialPolytope& psi) {
  UniPoly eb = ehrhart(psi.box());
  UniPoly e = eb;
  for (const auto& l : psi.support()) {
    Rat m = piece_min(psi, l);
    e = e + (ehrhart(tilde_delta(psi, l)) - eb * UniPoly(std::vector<Rat>{Rat(1), -m}));
  }
  return e;
}

struct HilbertResult {
  bool exact = true;
  UniPoly poly;   // exact value, or the upper bound
  UniPoly lower;  // lower bound (equals poly when exact)
};

inline HilbertResult hilbert_polynomial(const DivisorialPolytope& psi) {
  UniPoly e = ehrhart_psi(psi);
  const long long g = psi.curve().genus();
  HilbertResult r;
  if (g == 0) {
    r.poly = r.lower = e;
    return r;
  }
  UniPoly shifted = e - Rat(g) * ehrhart(psi.box());
  bool hyp = true;
  for (const auto& u : lattice_points(psi.box())) {
    if (degree(floor_div(psi(u))) < Rat(2 * g - 1)) hyp = false;
  }
  if (hyp) {
    r.poly = r.lower = shifted;
  } else {
    r.exact = false;
    r.poly = e;
    r.lower = shifted;
  }
  return r;
}

/// Restriction of a toric polytope Delta in M' to the subtorus with character lattice M,
/// given the exact sequence 0 -> Z --F--> M' --G--> M -> 0 and a section s of G.
inline DivisorialPolytope toric_downgrade(const Polyhedron& delta, const Vec& f, const Matrix& g, const Matrix& s) {
  const std::size_t np = delta.ambient_dim();
  const std::size_t n = g.size();
  if (f.size() != np || n + 1 != np) throw std::invalid_argument("toric_downgrade: rank mismatch");
  if (s.size() != np) throw std::invalid_argument("toric_downgrade: section must have rank(M') rows");
  for (const auto& row : g) {
    if (row.size() != np) throw std::invalid_argument("toric_downgrade: projection rank mismatch");
    if (!dot(row, f).is_zero()) throw std::invalid_argument("toric_downgrade: G(F) != 0");
  }
  for (const auto& row : s) {
    if (row.size() != n) throw std::invalid_argument("toric_downgrade: section rank mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rat gs;
      for (std::size_t k = 0; k < np; ++k) gs += g[i][k] * s[k][j];
      if (gs != Rat(i == j ? 1 : 0)) throw std::invalid_argument("toric_downgrade: G(s(u)) != u");
    }
  }
  if (!delta.is_bounded()) throw std::invalid_argument("toric_downgrade: polytope expected");
  for (const auto& v : delta.vertices()) {
    if (!is_integral(v)) throw std::invalid_argument("toric_downgrade: lattice polytope expected");
  }
  // a(x): coefficient of F in x - s(G x), i.e. the last coordinate in the basis (s, F)
  Matrix cols;
  for (std::size_t j = 0; j < n; ++j) {
    Vec c(np);
    for (std::size_t k = 0; k < np; ++k) c[k] = s[k][j];
    cols.push_back(c);
  }
  cols.push_back(f);
  auto phi = [&](const Vec& x, int sign) {
    auto coords = solve_columns(cols, x);
    if (!coords) throw std::invalid_argument("toric_downgrade: (s, F) is not a basis");
    Vec y(n + 1);
    for (std::size_t i = 0; i < n; ++i) y[i] = dot(g[i], x);
    y[n] = Rat(sign) * (*coords)[n];
    return y;
  };
  Curve c = Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}});
  std::map<std::string, Piece> pieces;
  Vec down(n + 1);
  down[n] = -1;
  for (int sign : {1, -1}) {
    Matrix pts;
    for (const auto& v : delta.vertices()) pts.push_back(phi(v, sign));
    Polyhedron hyp = Polyhedron::from_generators(pts, {down}, {}, n + 1);
    pieces.emplace(sign > 0 ? "0" : "inf", detail::piece_from_hypograph(hyp));
  }
  return DivisorialPolytope(c, linear_image(delta, g), pieces);
}

namespace detail {

// homogeneous coordinates on P^1
inline Vec homog(const CurvePoint& p) { return p.at_infinity ? make_vec({1, 0}) : Vec{*p.coord, Rat(1)}; }

inline bool proj_equal(const Vec& a, const Vec& b) { return (a[0] * b[1] - a[1] * b[0]).is_zero(); }

/// 2x2 matrix sending infinity, 0, 1 to a, b, c (as columns lambda a, mu b with lambda a + mu b = c).
inline std::optional<Matrix> frame(const Vec& a, const Vec& b, const Vec& c) {
  auto sol = solve_columns({a, b}, c);
  if (!sol || (*sol)[0].is_zero() || (*sol)[1].is_zero()) return std::nullopt;
  Matrix m(2, Vec(2));
  for (int i = 0; i < 2; ++i) {
    m[i][0] = (*sol)[0] * a[i];
    m[i][1] = (*sol)[1] * b[i];
  }
  return m;
}

inline Vec apply2(const Matrix& m, const Vec& x) { return {m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]}; }

inline Matrix inverse2(const Matrix& m) {
  Rat d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return {{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}};
}

inline Matrix mul2(const Matrix& a, const Matrix& b) {
  Matrix r(2, Vec(2));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return r;
}

/// Canonical piece of u -> Psi(F u) on the box F^{-1}(Box), F = +-1.
inline Piece flip_piece(const Piece& p, int f) {
  Piece q;
  for (const auto& a : p) q.push_back({Rat(f) * a.gradient, a.constant});
  std::sort(q.begin(), q.end());
  return q;
}

/// Integer e with b = a + e*u (as pieces), if any.
inline std::optional<Rat> linear_residual(const Piece& a, const Piece& b) {
  if (a.size() != b.size()) return std::nullopt;
  Rat e = b.front().gradient[0] - a.front().gradient[0];
  if (!e.is_integer()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i].gradient[0] - a[i].gradient[0] != e || b[i].constant != a[i].constant) return std::nullopt;
  }
  return e;
}

}  // namespace detail

/// Equivalence of rank-one divisorial polytopes on P^1 under lattice automorphisms of M,
/// automorphisms of P^1 and shifts by principal-valued linear maps.
inline bool equivalent_rank1(const DivisorialPolytope& a, const DivisorialPolytope& b) {
  if (a.rank() != 1 || b.rank() != 1) throw std::invalid_argument("equivalent_rank1: rank one only");
  if (!a.curve().is_p1() || !b.curve().is_p1()) throw std::invalid_argument("equivalent_rank1: projective line only");
  std::vector<std::string> sa = a.support(), sb = b.support();
  Piece zero{{zero_vec(1), Rat(0)}};
  for (int f : {1, -1}) {
    if (!(b.box() == linear_image(a.box(), {make_vec({f})}))) continue;
    // pieces of a pulled back along F, on b's box
    std::map<std::string, Piece> pa;
    for (const auto& l : sa) pa[l] = detail::flip_piece(a.piece(l), f);
    // enumerate partial injections sb -> sa
    std::vector<int> match(sb.size(), -1);
    std::function<bool(std::size_t, std::vector<bool>&)> rec = [&](std::size_t i, std::vector<bool>& used) -> bool {
      if (i == sb.size()) {
        // residual shifts must be integral linear and sum to zero
        Rat total;
        std::vector<std::pair<Vec, Vec>> pairs;  // (source coord in b, target coord in a)
        for (std::size_t j = 0; j < sb.size(); ++j) {
          const Piece& pb = b.pieces().at(sb[j]);
          const Piece& src = match[j] >= 0 ? pa[sa[static_cast<std::size_t>(match[j])]] : zero;
          auto e = detail::linear_residual(src, pb);
          if (!e) return false;
          total += *e;
          if (match[j] >= 0) {
            pairs.emplace_back(detail::homog(b.curve().point(sb[j])),
                               detail::homog(a.curve().point(sa[static_cast<std::size_t>(match[j])])));
          }
        }
        for (std::size_t k = 0; k < sa.size(); ++k) {
          if (used[k]) continue;
          // an unmatched point of a maps to a point outside b's support
          auto e = detail::linear_residual(pa[sa[k]], zero);
          if (!e) return false;
          total += *e;
        }
        if (!total.is_zero()) return false;
        if (pairs.size() < 3) return true;
        auto src = detail::frame(pairs[0].first, pairs[1].first, pairs[2].first);
        auto dst = detail::frame(pairs[0].second, pairs[1].second, pairs[2].second);
        if (!src || !dst) return false;
        Matrix phi = detail::mul2(*dst, detail::inverse2(*src));
        for (std::size_t j = 0; j < sb.size(); ++j) {
          Vec img = detail::apply2(phi, detail::homog(b.curve().point(sb[j])));
          for (std::size_t k = 0; k < sa.size(); ++k) {
            bool hits = detail::proj_equal(img, detail::homog(a.curve().point(sa[k])));
            bool matched = match[j] == static_cast<int>(k);
            if (hits != matched) return false;
          }
        }
        return true;
      }
      match[i] = -1;
      if (rec(i + 1, used)) return true;
      for (std::size_t k = 0; k < sa.size(); ++k) {
        if (used[k]) continue;
        used[k] = true;
        match[i] = static_cast<int>(k);
        bool ok = rec(i + 1, used);
        used[k] = false;
        if (ok) return true;
      }
      match[i] = -1;
      return false;
    };
    std::vector<bool> used(sa.size(), false);
    if (rec(0, used)) return true;
  }
  return false;
}

}  // namespace divpoly
