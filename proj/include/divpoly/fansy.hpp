// Marked fansy divisors and their divisorial fans.
#pragma once

#include "divpoly/pdiv.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

inline PolyhedralComplex complex_of_fan(const Fan& f) {
  std::vector<Polyhedron> cells;
  for (const auto& c : f.maximal_cones()) cells.push_back(c.as_polyhedron());
  return PolyhedralComplex::from_cells(cells, f.ambient_dim());
}

/// Slices Xi_P (complete subdivisions of N_Q with tail fan Sigma) and a set of marked cones of Sigma.
class MarkedFansyDivisor {
 public:
  MarkedFansyDivisor() = default;
  /// `slices` maps a point to the maximal cells of its subdivision; slices equal to the tail fan are dropped.
  MarkedFansyDivisor(Curve curve, Fan tailfan, const std::map<std::string, std::vector<Polyhedron>>& slices,
                     const std::vector<Cone>& marks)
      : curve_(std::move(curve)), tailfan_(std::move(tailfan)) {
    const std::size_t n = tailfan_.ambient_dim();
    trivial_ = complex_of_fan(tailfan_);
    for (const auto& [label, cells] : slices) {
      if (!curve_.has_point(label)) throw std::invalid_argument("MarkedFansyDivisor: unknown point '" + label + "'");
      for (const auto& c : cells) {
        if (c.ambient_dim() != n) throw std::invalid_argument("MarkedFansyDivisor: cell rank mismatch at '" + label + "'");
        if (c.is_empty()) throw std::invalid_argument("MarkedFansyDivisor: empty cell at '" + label + "'");
      }
      PolyhedralComplex pc = PolyhedralComplex::from_cells(cells, n);
      if (pc == trivial_) continue;
      slices_.emplace(label, std::move(pc));
    }
    std::set<Cone> ms;
    for (const auto& m : marks) {
      if (!tailfan_.has_cone(m)) throw std::invalid_argument("MarkedFansyDivisor: marked cone " + m.str() + " not in the tail fan");
      ms.insert(m);
    }
    marks_.assign(ms.begin(), ms.end());
  }

  const Curve& curve() const { return curve_; }
  const Fan& tailfan() const { return tailfan_; }
  std::size_t ambient_dim() const { return tailfan_.ambient_dim(); }
  /// Nontrivial slices only.
  const std::map<std::string, PolyhedralComplex>& slices() const { return slices_; }
  const PolyhedralComplex& slice(const std::string& label) const {
    auto it = slices_.find(label);
    return it == slices_.end() ? trivial_ : it->second;
  }
  std::vector<std::string> support() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : slices_) out.push_back(k);
    return out;
  }
  const std::vector<Cone>& marks() const { return marks_; }
  bool is_marked(const Cone& c) const { return std::binary_search(marks_.begin(), marks_.end(), c); }

  /// Full-dimensional cones of the tail fan.
  std::vector<Cone> maximal_cones() const {
    std::vector<Cone> out;
    for (const auto& c : tailfan_.cones()) {
      if (c.dim() == static_cast<int>(ambient_dim())) out.push_back(c);
    }
    return out;
  }

  friend bool operator==(const MarkedFansyDivisor& a, const MarkedFansyDivisor& b) {
    return a.curve_ == b.curve_ && a.tailfan_ == b.tailfan_ && a.slices_ == b.slices_ && a.marks_ == b.marks_;
  }

 private:
  Curve curve_;
  Fan tailfan_;
  PolyhedralComplex trivial_;
  std::map<std::string, PolyhedralComplex> slices_;
  std::vector<Cone> marks_;
};

/// The unique maximal cell of `slice` whose tail cone is sigma.
inline Polyhedron cell_with_tail(const PolyhedralComplex& slice, const Cone& sigma) {
  std::optional<Polyhedron> found;
  for (const auto& c : slice.cells()) {
    if (!(tail_cone(c) == sigma)) continue;
    if (found) throw std::invalid_argument("cell_with_tail: several cells with tail " + sigma.str());
    found = c;
  }
  if (!found) throw std::invalid_argument("cell_with_tail: no cell with tail " + sigma.str());
  return *found;
}

/// D^sigma = sum_P Delta_P^sigma P.
inline PolyhedralDivisor dsigma(const MarkedFansyDivisor& x, const Cone& sigma) {
  if (sigma.dim() != static_cast<int>(x.ambient_dim()) || !x.tailfan().has_cone(sigma)) {
    throw std::invalid_argument("dsigma: " + sigma.str() + " is not a full-dimensional cone of the tail fan");
  }
  std::map<std::string, Polyhedron> coeffs;
  for (const auto& [label, slice] : x.slices()) coeffs.emplace(label, cell_with_tail(slice, sigma));
  return PolyhedralDivisor(x.curve(), sigma, coeffs);
}

struct ConditionResult {
  int condition = 0;
  Verdict verdict = Verdict::Yes;
  std::vector<std::string> witnesses;
};

struct FansyReport {
  Verdict verdict = Verdict::Yes;
  std::vector<ConditionResult> conditions;
};

inline FansyReport validate(const MarkedFansyDivisor& x) {
  FansyReport rep;
  const std::size_t n = x.ambient_dim();
  ConditionResult c1{1}, c2{2}, c3{3}, c4{4};
  auto fail = [](ConditionResult& c, Verdict v, std::string w) {
    c.verdict = c.verdict && v;
    c.witnesses.push_back(std::move(w));
  };

  if (!x.tailfan().is_complete()) fail(c1, Verdict::No, "tail fan is not complete");
  std::set<Cone> fan_cones(x.tailfan().cones().begin(), x.tailfan().cones().end());
  for (const auto& [label, slice] : x.slices()) {
    if (!is_complete_subdivision(slice.maximal_cells(), n)) fail(c1, Verdict::No, "slice at " + label + " is not a complete subdivision");
    std::set<Cone> tails;
    for (const auto& c : slice.cells()) tails.insert(tail_cone(c));
    if (tails != fan_cones) fail(c1, Verdict::No, "tail fan of the slice at " + label + " differs from Sigma");
  }

  bool structural = c1.verdict == Verdict::Yes;
  std::map<Cone, PolyhedralDivisor> ds;
  for (const auto& sigma : x.maximal_cones()) {
    if (!x.is_marked(sigma)) continue;
    if (!sigma.is_pointed()) {
      fail(c2, Verdict::No, "marked cone " + sigma.str() + " is not pointed");
      continue;
    }
    if (!structural) continue;
    PolyhedralDivisor d = dsigma(x, sigma);
    ProperReport pr = is_proper(d);
    if (pr.verdict != Verdict::Yes) fail(c2, pr.verdict, "D^sigma for " + sigma.str() + ": " + pr.reason);
    ds.emplace(sigma, d);
  }

  for (const auto& [sigma, d] : ds) {
    Polyhedron deg = degree_poly(d);
    for (const auto& tau : faces(sigma)) {
      bool meets = !intersection(deg, tau.as_polyhedron()).is_empty();
      if (meets != x.is_marked(tau)) {
        fail(c3, Verdict::No,
             "face " + tau.str() + " of " + sigma.str() + (meets ? " meets deg D^sigma but is unmarked" : " is marked but misses deg D^sigma"));
      }
    }
  }

  for (const auto& tau : x.marks()) {
    for (const auto& sigma : x.tailfan().cones()) {
      if (sigma == tau || !is_face(tau, sigma)) continue;
      if (!x.is_marked(sigma)) fail(c4, Verdict::No, "marked " + tau.str() + " is a face of unmarked " + sigma.str());
    }
  }

  for (auto* c : {&c1, &c2, &c3, &c4}) {
    rep.verdict = rep.verdict && c->verdict;
    rep.conditions.push_back(*c);
  }
  return rep;
}

/// All pairwise intersections, iterated to closure.
inline std::vector<PolyhedralDivisor> intersection_closure(std::vector<PolyhedralDivisor> s) {
  auto has = [&](const PolyhedralDivisor& d) { return std::find(s.begin(), s.end(), d) != s.end(); };
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      PolyhedralDivisor x = intersect(s[i], s[j]);
      if (!has(x)) s.push_back(std::move(x));
    }
  }
  return s;
}

struct DivisorialFan {
  std::vector<PolyhedralDivisor> generators;
  std::vector<PolyhedralDivisor> members;  // generators plus intersections
};

/// D^sigma for full-dimensional marked sigma, plus Delta P_i + sum_{j != i} empty P_j for maximal
/// cells Delta of a nontrivial slice with unmarked tail; closed under intersection.
inline DivisorialFan to_divisorial_fan(const MarkedFansyDivisor& x) {
  FansyReport r = validate(x);
  if (r.verdict == Verdict::No) throw std::invalid_argument("to_divisorial_fan: invalid marked fansy divisor");
  DivisorialFan out;
  for (const auto& sigma : x.maximal_cones()) {
    if (x.is_marked(sigma)) out.generators.push_back(dsigma(x, sigma));
  }
  std::vector<std::string> supp = x.support();
  for (const auto& pi : supp) {
    for (const auto& cell : x.slice(pi).maximal_cells()) {
      Cone tail = tail_cone(cell);
      if (x.is_marked(tail)) continue;
      std::map<std::string, Polyhedron> coeffs{{pi, cell}};
      for (const auto& pj : supp) {
        if (pj != pi) coeffs.emplace(pj, Polyhedron::empty(x.ambient_dim()));
      }
      out.generators.push_back(PolyhedralDivisor(x.curve(), tail, coeffs));
    }
  }
  out.members = intersection_closure(out.generators);
  return out;
}

/// Slices from the coefficients, marks from the tails of members with complete locus.
inline MarkedFansyDivisor from_divisorial_fan(const std::vector<PolyhedralDivisor>& s) {
  if (s.empty()) throw std::invalid_argument("from_divisorial_fan: empty divisorial fan");
  const Curve& curve = s.front().curve();
  const std::size_t n = s.front().ambient_dim();
  for (const auto& d : s) {
    if (!(d.curve() == curve) || d.ambient_dim() != n) throw std::invalid_argument("from_divisorial_fan: curve or rank mismatch");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      PolyhedralDivisor x = intersect(s[i], s[j]);
      std::string pair = "(" + std::to_string(j) + ", " + std::to_string(i) + ")";
      if (std::find(s.begin(), s.end(), x) == s.end()) {
        throw std::invalid_argument("from_divisorial_fan: intersection of members " + pair + " is missing");
      }
      if (!is_face_rel(x, s[i]) || !is_face_rel(x, s[j])) {
        throw std::invalid_argument("from_divisorial_fan: intersection of members " + pair + " is not a face of both");
      }
    }
  }
  std::vector<Cone> tails, marks;
  std::map<std::string, std::vector<Polyhedron>> cells;
  for (const auto& d : s) {
    tails.push_back(d.tail());
    if (locus(d).complete()) marks.push_back(d.tail());
    for (const auto& l : curve.labels()) {
      Polyhedron c = d.coefficient(l);
      if (!c.is_empty()) cells[l].push_back(c);
    }
  }
  return MarkedFansyDivisor(curve, Fan::from_cones(tails, n), cells, marks);
}

}  // namespace divpoly
