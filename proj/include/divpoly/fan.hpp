// Fans and polyhedral complexes, normal fans and common refinements.
#pragma once

#include "divpoly/polyhedron.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace divpoly {

/// A fan stored as the sorted set of all its cones (closed under faces).
class Fan {
 public:
  Fan() = default;
  explicit Fan(std::size_t dim) : dim_(dim) {}

  /// Face closure of the given cones. Does not check that intersections are common faces.
  static Fan from_cones(const std::vector<Cone>& cones, std::size_t dim) {
    Fan f(dim);
    std::set<Cone> all;
    for (const auto& c : cones) {
      if (c.ambient_dim() != dim) throw std::invalid_argument("Fan: ambient rank mismatch");
      for (auto& face : faces(c)) all.insert(std::move(face));
    }
    f.cones_.assign(all.begin(), all.end());
    return f;
  }

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Cone>& cones() const { return cones_; }

  /// Cones not properly contained in another cone of the fan.
  std::vector<Cone> maximal_cones() const {
    std::vector<Cone> out;
    for (const auto& c : cones_) {
      bool maximal = true;
      for (const auto& d : cones_) {
        if (!(d == c) && d.dim() > c.dim() && d.contains(c)) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(c);
    }
    return out;
  }
  std::vector<Cone> cones_of_dim(int k) const {
    std::vector<Cone> out;
    for (const auto& c : cones_) {
      if (c.dim() == k) out.push_back(c);
    }
    return out;
  }
  bool has_cone(const Cone& c) const { return std::binary_search(cones_.begin(), cones_.end(), c); }
  /// Union of the cones equals the ambient space (checked via the maximal cones forming a closed pseudomanifold).
  bool is_complete() const;

  friend bool operator==(const Fan& a, const Fan& b) { return a.dim_ == b.dim_ && a.cones_ == b.cones_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Cone> cones_;
};

/// A polyhedral complex stored by its cells (closed under faces).
class PolyhedralComplex {
 public:
  PolyhedralComplex() = default;
  explicit PolyhedralComplex(std::size_t dim) : dim_(dim) {}

  static PolyhedralComplex from_cells(const std::vector<Polyhedron>& cells, std::size_t dim) {
    PolyhedralComplex c(dim);
    std::set<Polyhedron> all;
    for (const auto& p : cells) {
      if (p.ambient_dim() != dim) throw std::invalid_argument("PolyhedralComplex: ambient rank mismatch");
      for (auto& face : faces(p)) all.insert(std::move(face));
    }
    c.cells_.assign(all.begin(), all.end());
    return c;
  }

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<Polyhedron>& cells() const { return cells_; }
  std::vector<Polyhedron> maximal_cells() const {
    std::vector<Polyhedron> out;
    for (const auto& c : cells_) {
      bool maximal = true;
      for (const auto& d : cells_) {
        if (!(d == c) && d.dim() > c.dim() && d.contains(c)) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(c);
    }
    return out;
  }
  std::vector<Polyhedron> vertices() const {
    std::vector<Polyhedron> out;
    for (const auto& c : cells_) {
      if (c.dim() == 0) out.push_back(c);
    }
    return out;
  }
  bool has_cell(const Polyhedron& p) const { return std::binary_search(cells_.begin(), cells_.end(), p); }

  friend bool operator==(const PolyhedralComplex& a, const PolyhedralComplex& b) {
    return a.dim_ == b.dim_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Polyhedron> cells_;
};

/// Complete subdivision test for full-dimensional maximal cells: every facet of a
/// maximal cell lies in exactly two maximal cells, and all maximal cells are full-dimensional.
/// A single cell equal to the whole space also counts as complete.
inline bool is_complete_subdivision(const std::vector<Polyhedron>& maximal, std::size_t dim) {
  if (maximal.empty()) return false;
  for (const auto& c : maximal) {
    if (!c.is_full_dimensional()) return false;
  }
  for (const auto& c : maximal) {
    for (const auto& f : facet_faces(c)) {
      int count = 0;
      for (const auto& d : maximal) {
        if (is_face(f, d)) ++count;
      }
      if (count != 2) return false;
    }
  }
  (void)dim;
  return true;
}

inline bool Fan::is_complete() const {
  std::vector<Polyhedron> maxc;
  for (const auto& c : maximal_cones()) maxc.push_back(c.as_polyhedron());
  return is_complete_subdivision(maxc, dim_);
}

/// Normal fan of a polyhedron: the cone at vertex v is {u : <u, w - v> >= 0 for all w in p}.
/// For unbounded p the fan covers only the dual of the tail cone.
inline Fan normal_fan(const Polyhedron& p) {
  if (p.is_empty()) throw std::invalid_argument("normal_fan: empty polyhedron");
  const std::size_t d = p.ambient_dim();
  std::vector<Cone> maxc;
  for (const auto& v : p.vertices()) {
    Matrix ineqs;
    for (const auto& w : p.vertices()) {
      if (!(w == v)) ineqs.push_back(w - v);
    }
    for (const auto& r : p.rays()) ineqs.push_back(r);
    maxc.push_back(Cone::from_inequalities(ineqs, p.lineality(), d));
  }
  return Fan::from_cones(maxc, d);
}

/// The maximal cone of the normal fan of p attached to vertex v.
inline Cone normal_cone(const Polyhedron& p, const Vec& v) {
  Matrix ineqs;
  for (const auto& w : p.vertices()) {
    if (!(w == v)) ineqs.push_back(w - v);
  }
  for (const auto& r : p.rays()) ineqs.push_back(r);
  return Cone::from_inequalities(ineqs, p.lineality(), p.ambient_dim());
}

/// Coarsest common refinement of the given fans restricted to `within`.
/// Output maximal cones are the full-dimensional (relative to `within`) intersections.
inline Fan common_refinement(const std::vector<Fan>& fans, const Cone& within) {
  const std::size_t d = within.ambient_dim();
  std::vector<Cone> current{within};
  for (const auto& f : fans) {
    if (f.ambient_dim() != d) throw std::invalid_argument("common_refinement: ambient rank mismatch");
    std::set<Cone> next;
    for (const auto& c : current) {
      for (const auto& m : f.maximal_cones()) {
        Cone x = intersection(c, m);
        if (x.dim() == within.dim()) next.insert(x);
      }
    }
    current.assign(next.begin(), next.end());
  }
  return Fan::from_cones(current, d);
}

/// Common refinement of polyhedral complexes: full-dimensional pairwise intersections.
inline PolyhedralComplex common_refinement(const std::vector<PolyhedralComplex>& cs, const Polyhedron& within) {
  const std::size_t d = within.ambient_dim();
  std::vector<Polyhedron> current{within};
  for (const auto& c : cs) {
    std::set<Polyhedron> next;
    for (const auto& a : current) {
      for (const auto& m : c.maximal_cells()) {
        Polyhedron x = intersection(a, m);
        if (!x.is_empty() && x.dim() == within.dim()) next.insert(x);
      }
    }
    current.assign(next.begin(), next.end());
  }
  return PolyhedralComplex::from_cells(current, d);
}

}  // namespace divpoly
