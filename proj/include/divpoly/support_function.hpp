// Support functions h = sum h_P (x) P on a marked fansy divisor.
#pragma once

#include "divpoly/divisorial_polytope.hpp"
#include "divpoly/fansy.hpp"

#include <map>
#include <set>
#include <tuple>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

/// Affine data per maximal cell of one slice.
using CellFunction = std::map<Polyhedron, Affine>;

class SupportFunction {
 public:
  SupportFunction() = default;
  /// `linear` gives the gradient on each full-dimensional cone of the tail fan; `pieces` the affine data on
  /// every maximal cell of a slice. Points without a piece carry the linear part.
  SupportFunction(MarkedFansyDivisor base, const std::map<Cone, Vec>& linear, const std::map<std::string, CellFunction>& pieces)
      : base_(std::move(base)), linear_(linear) {
    const std::size_t n = base_.ambient_dim();
    for (const auto& sigma : base_.maximal_cones()) {
      auto it = linear_.find(sigma);
      if (it == linear_.end()) throw std::invalid_argument("SupportFunction: no linear part on " + sigma.str());
      if (it->second.size() != n) throw std::invalid_argument("SupportFunction: gradient rank mismatch");
    }
    if (linear_.size() != base_.maximal_cones().size()) throw std::invalid_argument("SupportFunction: linear part on a cone outside the tail fan");
    for (const auto& [label, cf] : pieces) {
      if (!base_.curve().has_point(label)) throw std::invalid_argument("SupportFunction: unknown point '" + label + "'");
      std::vector<Polyhedron> maxc = base_.slice(label).maximal_cells();
      if (cf.size() != maxc.size()) throw std::invalid_argument("SupportFunction: piece at '" + label + "' does not cover its slice");
      for (const auto& c : maxc) {
        auto it = cf.find(c);
        if (it == cf.end()) throw std::invalid_argument("SupportFunction: no affine data on cell " + c.str() + " at '" + label + "'");
        if (it->second.gradient.size() != n) throw std::invalid_argument("SupportFunction: gradient rank mismatch");
        Cone t = tail_cone(c);
        if (t.dim() == static_cast<int>(n) && it->second.gradient != linear_.at(t)) {
          throw std::invalid_argument("SupportFunction: linear part at '" + label + "' differs on " + t.str());
        }
      }
      if (cf != linear_piece()) pieces_.emplace(label, cf);
    }
  }

  const MarkedFansyDivisor& base() const { return base_; }
  const Curve& curve() const { return base_.curve(); }
  std::size_t ambient_dim() const { return base_.ambient_dim(); }
  const std::map<Cone, Vec>& linear() const { return linear_; }
  /// Nontrivial pieces only.
  const std::map<std::string, CellFunction>& pieces() const { return pieces_; }
  CellFunction piece(const std::string& label) const {
    auto it = pieces_.find(label);
    return it == pieces_.end() ? linear_piece() : it->second;
  }
  /// h^0 as cell data on the tail fan.
  CellFunction linear_piece() const {
    CellFunction f;
    for (const auto& [c, g] : linear_) f.emplace(c.as_polyhedron(), Affine{g, Rat(0)});
    return f;
  }
  std::vector<std::string> support() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : pieces_) out.push_back(k);
    return out;
  }
  Rat value(const std::string& label, const Vec& v) const {
    for (const auto& [c, a] : piece(label)) {
      if (c.contains(v)) return a(v);
    }
    throw std::logic_error("SupportFunction::value: point outside every cell");
  }

  friend bool operator==(const SupportFunction& a, const SupportFunction& b) {
    return a.base_ == b.base_ && a.linear_ == b.linear_ && a.pieces_ == b.pieces_;
  }

 private:
  MarkedFansyDivisor base_;
  std::map<Cone, Vec> linear_;
  std::map<std::string, CellFunction> pieces_;
};

namespace detail {

/// Two affine functions agree on the polyhedron q.
inline bool agree_on(const Affine& a, const Affine& b, const Polyhedron& q) {
  for (const auto& v : q.vertices()) {
    if (a(v) != b(v)) return false;
  }
  Vec d = a.gradient - b.gradient;
  for (const auto& r : q.rays()) {
    if (!dot(d, r).is_zero()) return false;
  }
  for (const auto& l : q.lineality()) {
    if (!dot(d, l).is_zero()) return false;
  }
  return true;
}

/// Pairs of maximal cells sharing a facet, with the facet.
inline std::vector<std::tuple<Polyhedron, Polyhedron, Polyhedron>> adjacent_cells(const CellFunction& f, std::size_t n) {
  std::vector<std::tuple<Polyhedron, Polyhedron, Polyhedron>> out;
  for (auto i = f.begin(); i != f.end(); ++i) {
    for (auto j = std::next(i); j != f.end(); ++j) {
      Polyhedron x = intersection(i->first, j->first);
      if (!x.is_empty() && x.dim() + 1 == static_cast<int>(n)) out.emplace_back(i->first, j->first, x);
    }
  }
  return out;
}

}  // namespace detail

struct SupportReport {
  Verdict verdict = Verdict::Yes;
  std::vector<std::string> failures;
};

/// Continuity across shared faces and integrality of every piece.
inline SupportReport validate(const SupportFunction& h) {
  SupportReport rep;
  auto check = [&](const std::string& label, const CellFunction& f) {
    for (auto i = f.begin(); i != f.end(); ++i) {
      // full-dimensional cells force integral gradient and constant
      if (!is_integral(i->second.gradient) || !i->second.constant.is_integer()) {
        rep.verdict = Verdict::No;
        rep.failures.push_back("h_" + label + " is not integral on " + i->first.str());
      }
      for (auto j = std::next(i); j != f.end(); ++j) {
        Polyhedron x = intersection(i->first, j->first);
        if (x.is_empty()) continue;
        if (!detail::agree_on(i->second, j->second, x)) {
          rep.verdict = Verdict::No;
          rep.failures.push_back("h_" + label + " is discontinuous on " + x.str());
        }
      }
    }
  };
  check("^0", h.linear_piece());
  for (const auto& [l, f] : h.pieces()) check(l, f);
  return rep;
}

/// h|sigma(0) = sum_P a_P P with h_P = <., u> + a_P on the cell with tail sigma.
inline QDivisor restrict_zero(const SupportFunction& h, const Cone& sigma) {
  if (sigma.dim() != static_cast<int>(h.ambient_dim()) || !h.base().tailfan().has_cone(sigma)) {
    throw std::invalid_argument("restrict_zero: " + sigma.str() + " is not a full-dimensional cone of the tail fan");
  }
  QDivisor d;
  for (const auto& [label, f] : h.pieces()) {
    Polyhedron c = cell_with_tail(h.base().slice(label), sigma);
    d.set(label, f.at(c).constant);
  }
  return d;
}

inline Verdict is_cartier(const SupportFunction& h) {
  Verdict v = Verdict::Yes;
  for (const auto& sigma : h.base().maximal_cones()) {
    if (!h.base().is_marked(sigma)) continue;
    v = v && is_principal(h.curve(), restrict_zero(h, sigma));
    if (v == Verdict::No) return v;
  }
  return v;
}

struct AmpleReport {
  Verdict verdict = Verdict::Yes;
  std::vector<std::string> failures;
};

/// Strict concavity of every h_P (including h^0) across interior facets, and
/// -deg h|sigma(0) > 0 on unmarked full-dimensional sigma.
inline AmpleReport is_ample(const SupportFunction& h) {
  Verdict c = is_cartier(h);
  if (c == Verdict::No) throw std::invalid_argument("is_ample: support function is not Cartier");
  AmpleReport rep;
  rep.verdict = c;
  if (c == Verdict::Unknown) rep.failures.push_back("Cartier condition undecided in positive genus");
  const std::size_t n = h.ambient_dim();
  auto concave = [&](const std::string& label, const CellFunction& f) {
    for (const auto& [a, b, facet] : detail::adjacent_cells(f, n)) {
      const Affine& fa = f.at(a);
      const Affine& fb = f.at(b);
      Vec pa = a.relative_interior_point(), pb = b.relative_interior_point();
      if (!(fa(pb) > fb(pb)) || !(fb(pa) > fa(pa))) {
        rep.verdict = Verdict::No;
        rep.failures.push_back("h_" + label + " is not strictly concave across " + facet.str());
      }
    }
  };
  concave("^0", h.linear_piece());
  for (const auto& [l, f] : h.pieces()) concave(l, f);
  for (const auto& sigma : h.base().maximal_cones()) {
    if (h.base().is_marked(sigma)) continue;
    Rat d = -degree(restrict_zero(h, sigma));
    if (!(d.sign() > 0)) {
      rep.verdict = Verdict::No;
      rep.failures.push_back("-deg h|sigma(0) = " + d.str() + " on unmarked " + sigma.str());
    }
  }
  return rep;
}

/// Box_h = {u : <v, u> >= h^0(v) for all v}.
inline Polyhedron weight_polytope(const SupportFunction& h) {
  const std::size_t n = h.ambient_dim();
  Matrix ineqs, eqs;
  for (const auto& [sigma, g] : h.linear()) {
    // <r, u - u_sigma> >= 0 on rays, = 0 on lineality
    for (const auto& r : sigma.rays()) ineqs.push_back(append(r, -dot(r, g)));
    for (const auto& l : sigma.lineality()) eqs.push_back(append(l, -dot(l, g)));
  }
  return Polyhedron::from_homogeneous(ineqs, eqs, n);
}

/// h*_P(u) = min over vertices v of Xi_P of <v, u> - h_P(v), on Box_h.
inline DivisorialPolytope dualize_h(const SupportFunction& h) {
  AmpleReport a = is_ample(h);
  if (a.verdict == Verdict::No) throw std::invalid_argument("dualize_h: support function is not ample: " + a.failures.front());
  Polyhedron box = weight_polytope(h);
  std::map<std::string, Piece> pieces;
  for (const auto& [label, f] : h.pieces()) {
    Piece p;
    for (const auto& vp : h.base().slice(label).vertices()) {
      const Vec& v = vp.vertices().front();
      p.push_back({v, -h.value(label, v)});
    }
    pieces.emplace(label, p);
  }
  return DivisorialPolytope(h.curve(), box, pieces);
}

inline H0Value sections_dim(const SupportFunction& h, const DivisorialPolytope& dual, const Vec& u) {
  if (!is_integral(u) || !dual.box().contains(u)) return {0, 0};
  return h0(h.curve(), dual(u));
}

inline H0Value sections_dim(const SupportFunction& h, const Vec& u) { return sections_dim(h, dualize_h(h), u); }

inline SupportFunction add(const SupportFunction& g, const SupportFunction& h) {
  if (!(g.base() == h.base())) throw std::invalid_argument("add: support functions live on different marked fansy divisors");
  std::map<Cone, Vec> lin;
  for (const auto& [c, u] : g.linear()) lin.emplace(c, u + h.linear().at(c));
  std::set<std::string> labels;
  for (const auto& l : g.support()) labels.insert(l);
  for (const auto& l : h.support()) labels.insert(l);
  std::map<std::string, CellFunction> pieces;
  for (const auto& l : labels) {
    CellFunction a = g.piece(l), b = h.piece(l), s;
    for (const auto& [c, f] : a) s.emplace(c, Affine{f.gradient + b.at(c).gradient, f.constant + b.at(c).constant});
    pieces.emplace(l, s);
  }
  return SupportFunction(g.base(), lin, pieces);
}

inline SupportFunction scale(long long k, const SupportFunction& h) {
  if (k <= 0) throw std::invalid_argument("scale: factor must be positive");
  Rat r(k);
  std::map<Cone, Vec> lin;
  for (const auto& [c, u] : h.linear()) lin.emplace(c, r * u);
  std::map<std::string, CellFunction> pieces;
  for (const auto& [l, f] : h.pieces()) {
    CellFunction s;
    for (const auto& [c, a] : f) s.emplace(c, Affine{r * a.gradient, r * a.constant});
    pieces.emplace(l, s);
  }
  return SupportFunction(h.base(), lin, pieces);
}

struct Dualized {
  MarkedFansyDivisor base;
  SupportFunction h;
};

/// Psi*_P(v) = min_{u in Box} <v, u> - Psi_P(u): slices are its linearity regions, the tail fan is the
/// normal fan of Box, and sigma is marked when deg Psi vanishes identically on the face F_sigma.
inline Dualized dualize_psi(const DivisorialPolytope& psi) {
  require_valid(psi, "dualize_psi");
  const Polyhedron& box = psi.box();
  const std::size_t n = psi.rank();
  Fan tailfan = normal_fan(box);
  Matrix rv = psi.refinement_vertices();
  std::vector<Cone> marks;
  for (const auto& sigma : tailfan.cones()) {
    Polyhedron f = face_of(box, sigma.as_polyhedron().relative_interior_point());
    bool zero = true;
    for (const auto& u : rv) {
      if (f.contains(u) && !psi.degree_at(u).is_zero()) zero = false;
    }
    if (zero) marks.push_back(sigma);
  }
  std::map<std::string, std::vector<Polyhedron>> slices;
  std::map<std::string, CellFunction> pieces;
  for (const auto& label : psi.support()) {
    Matrix gv = psi.graph_vertices(label);
    CellFunction cf;
    for (const auto& u : gv) {
      Affine a{u, -psi.value(label, u)};
      Matrix ineqs;
      for (const auto& w : gv) {
        if (w == u) continue;
        // <v, w> - Psi(w) - (<v, u> - Psi(u)) >= 0
        ineqs.push_back(append(w - u, psi.value(label, u) - psi.value(label, w)));
      }
      Polyhedron cell = Polyhedron::from_homogeneous(ineqs, {}, n);
      slices[label].push_back(cell);
      cf.emplace(cell, a);
    }
    pieces.emplace(label, cf);
  }
  std::map<Cone, Vec> lin;
  for (const auto& sigma : tailfan.cones()) {
    if (sigma.dim() != static_cast<int>(n)) continue;
    Polyhedron f = face_of(box, sigma.as_polyhedron().relative_interior_point());
    lin.emplace(sigma, f.vertices().front());
  }
  MarkedFansyDivisor base(psi.curve(), tailfan, slices, marks);
  return {base, SupportFunction(base, lin, pieces)};
}

}  // namespace divpoly
