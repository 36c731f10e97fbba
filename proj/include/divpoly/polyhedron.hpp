// Rational polyhedra and polyhedral cones in V-representation.
//
// A polyhedron is stored in canonical form: vertices sorted lexicographically,
// rays primitive and sorted, lineality as a primitive echelon basis, with
// vertices and rays reduced modulo the lineality space. Equality of polyhedra
// is equality of canonical forms. The H-representation is computed alongside
// (homogenized rows (a, c) meaning a.x + c >= 0) since almost every operation
// here needs both.
#pragma once

#include "divpoly/double_description.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t dim) {
    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = true;
    return p;
  }

  static Polyhedron point(const Vec& x) { return from_generators({x}, {}, {}, x.size()); }

  static Polyhedron whole_space(std::size_t dim) {
    Matrix lin;
    for (std::size_t i = 0; i < dim; ++i) {
      Vec e(dim);
      e[i] = 1;
      lin.push_back(e);
    }
    return from_generators({zero_vec(dim)}, {}, lin, dim);
  }

  /// conv(points) + cone(rays) + span(lineality). An empty point list yields the empty polyhedron.
  static Polyhedron from_generators(const Matrix& points, const Matrix& rays, const Matrix& lineality,
                                    std::size_t dim) {
    if (points.empty()) return empty(dim);
    Matrix hom_gens, hom_lin;
    for (const auto& p : points) {
      check_dim(p, dim);
      hom_gens.push_back(append(p, 1));
    }
    for (const auto& r : rays) {
      check_dim(r, dim);
      if (!is_zero(r)) hom_gens.push_back(append(r, 0));
    }
    for (const auto& l : lineality) {
      check_dim(l, dim);
      if (!is_zero(l)) hom_lin.push_back(append(l, 0));
    }
    ConeGenerators dual = double_description(hom_gens, hom_lin, dim + 1);
    return from_hrep(dual.rays, dual.lineality, dim);
  }

  /// {x : A x >= b, E x == e}.
  static Polyhedron from_inequalities(const Matrix& a, const Vec& b, const Matrix& e, const Vec& f,
                                      std::size_t dim) {
    Matrix ineqs, eqs;
    for (std::size_t i = 0; i < a.size(); ++i) {
      check_dim(a[i], dim);
      ineqs.push_back(append(a[i], -b[i]));
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      check_dim(e[i], dim);
      eqs.push_back(append(e[i], -f[i]));
    }
    return from_homogeneous(ineqs, eqs, dim);
  }

  /// From homogenized constraint rows (a, c): a.x + c >= 0, resp. == 0.
  static Polyhedron from_homogeneous(Matrix ineqs, const Matrix& eqs, std::size_t dim) {
    Vec far(dim + 1);
    far[dim] = 1;
    ineqs.push_back(far);
    ConeGenerators g = double_description(ineqs, eqs, dim + 1);
    Matrix pts, rays, lin;
    for (const auto& r : g.rays) {
      if (r[dim].sign() > 0) {
        pts.push_back(drop_last((Rat(1) / r[dim]) * r));
      } else {
        rays.push_back(drop_last(r));
      }
    }
    for (const auto& l : g.lineality) lin.push_back(drop_last(l));
    return from_generators(pts, rays, lin, dim);
  }

  bool is_empty() const { return empty_; }
  std::size_t ambient_dim() const { return dim_; }
  const Matrix& vertices() const { return vertices_; }
  const Matrix& rays() const { return rays_; }
  const Matrix& lineality() const { return lineality_; }
  /// Homogenized facet rows (a, c), a.x + c >= 0; excludes the face at infinity.
  const Matrix& facets() const { return facets_; }
  /// Homogenized equation rows (a, c), a.x + c == 0.
  const Matrix& equations() const { return equations_; }

  /// Dimension of the affine hull; -1 for the empty polyhedron.
  int dim() const { return empty_ ? -1 : static_cast<int>(dim_) - static_cast<int>(equations_.size()); }
  bool is_bounded() const { return !empty_ && rays_.empty() && lineality_.empty(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dimensional() const { return !empty_ && equations_.empty(); }

  bool contains(const Vec& x) const {
    if (empty_) return false;
    Vec h = append(x, 1);
    for (const auto& e : equations_) {
      if (!dot(e, h).is_zero()) return false;
    }
    for (const auto& f : facets_) {
      if (dot(f, h).sign() < 0) return false;
    }
    return true;
  }

  /// True if the direction d lies in the tail cone.
  bool contains_direction(const Vec& d) const {
    Vec h = append(d, 0);
    for (const auto& e : equations_) {
      if (!dot(e, h).is_zero()) return false;
    }
    for (const auto& f : facets_) {
      if (dot(f, h).sign() < 0) return false;
    }
    return true;
  }

  bool contains(const Polyhedron& q) const {
    if (q.empty_) return true;
    if (empty_) return false;
    for (const auto& v : q.vertices_) {
      if (!contains(v)) return false;
    }
    for (const auto& r : q.rays_) {
      if (!contains_direction(r)) return false;
    }
    for (const auto& l : q.lineality_) {
      if (!contains_direction(l) || !contains_direction(-l)) return false;
    }
    return true;
  }

  /// Average of the vertices plus the sum of the rays.
  Vec relative_interior_point() const {
    if (empty_) throw std::domain_error("relative_interior_point: empty polyhedron");
    Vec c = zero_vec(dim_);
    for (const auto& v : vertices_) c = c + v;
    c = (Rat(1) / Rat(static_cast<long long>(vertices_.size()))) * c;
    for (const auto& r : rays_) c = c + r;
    return c;
  }

  Polyhedron translate(const Vec& t) const {
    if (empty_) return *this;
    Matrix pts;
    for (const auto& v : vertices_) pts.push_back(v + t);
    return from_generators(pts, rays_, lineality_, dim_);
  }

  Polyhedron scale(const Rat& k) const {
    if (k.sign() <= 0) throw std::invalid_argument("Polyhedron::scale: factor must be positive");
    if (empty_) return *this;
    Matrix pts;
    for (const auto& v : vertices_) pts.push_back(k * v);
    return from_generators(pts, rays_, lineality_, dim_);
  }

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.dim_ == b.dim_ && a.empty_ == b.empty_ && a.vertices_ == b.vertices_ && a.rays_ == b.rays_ &&
           a.lineality_ == b.lineality_;
  }
  friend bool operator<(const Polyhedron& a, const Polyhedron& b) {
    if (a.empty_ != b.empty_) return a.empty_;
    if (a.vertices_ != b.vertices_) return a.vertices_ < b.vertices_;
    if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
    return a.lineality_ < b.lineality_;
  }

  std::string str() const {
    if (empty_) return "empty";
    std::string s = "conv{";
    for (std::size_t i = 0; i < vertices_.size(); ++i) s += (i ? "," : "") + to_string(vertices_[i]);
    s += "}";
    if (!rays_.empty()) {
      s += "+cone{";
      for (std::size_t i = 0; i < rays_.size(); ++i) s += (i ? "," : "") + to_string(rays_[i]);
      s += "}";
    }
    if (!lineality_.empty()) {
      s += "+span{";
      for (std::size_t i = 0; i < lineality_.size(); ++i) s += (i ? "," : "") + to_string(lineality_[i]);
      s += "}";
    }
    return s;
  }

 private:
  static void check_dim(const Vec& v, std::size_t dim) {
    if (v.size() != dim) throw std::invalid_argument("polyhedron: ambient rank mismatch");
  }

  // hrep: homogenized dual generators of the cone over the polyhedron
  static Polyhedron from_hrep(const Matrix& dual_rays, const Matrix& dual_lin, std::size_t dim) {
    ConeGenerators primal = double_description(dual_rays, dual_lin, dim + 1);
    Polyhedron p;
    p.dim_ = dim;
    p.empty_ = false;
    for (const auto& r : primal.rays) {
      if (r[dim].sign() > 0) {
        p.vertices_.push_back(drop_last((Rat(1) / r[dim]) * r));
      } else {
        p.rays_.push_back(drop_last(r));
      }
    }
    // a cone's apex is not extreme when there is lineality
    if (p.vertices_.empty()) p.vertices_.push_back(zero_vec(dim));
    for (const auto& l : primal.lineality) p.lineality_.push_back(drop_last(l));
    std::sort(p.vertices_.begin(), p.vertices_.end());
    std::sort(p.rays_.begin(), p.rays_.end());
    for (const auto& f : dual_rays) {
      bool far = true;
      for (std::size_t i = 0; i < dim; ++i) {
        if (!f[i].is_zero()) {
          far = false;
          break;
        }
      }
      if (!far) p.facets_.push_back(f);
    }
    p.equations_ = dual_lin;
    return p;
  }

  std::size_t dim_ = 0;
  bool empty_ = true;
  Matrix vertices_;
  Matrix rays_;
  Matrix lineality_;
  Matrix facets_;
  Matrix equations_;
};

/// Polyhedral cone with apex at the origin.
class Cone {
 public:
  Cone() = default;
  explicit Cone(Polyhedron p) : p_(std::move(p)) {
    if (p_.is_empty()) throw std::invalid_argument("Cone: empty polyhedron");
    for (const auto& v : p_.vertices()) {
      if (!is_zero(v)) throw std::invalid_argument("Cone: apex is not the origin");
    }
  }
  static Cone from_rays(const Matrix& rays, const Matrix& lineality, std::size_t dim) {
    return Cone(Polyhedron::from_generators({zero_vec(dim)}, rays, lineality, dim));
  }
  static Cone from_rays(const Matrix& rays, std::size_t dim) { return from_rays(rays, {}, dim); }
  static Cone zero(std::size_t dim) { return from_rays({}, {}, dim); }
  static Cone whole_space(std::size_t dim) { return Cone(Polyhedron::whole_space(dim)); }
  /// {x : a.x >= 0 for a in ineqs, e.x == 0 for e in eqs}
  static Cone from_inequalities(const Matrix& ineqs, const Matrix& eqs, std::size_t dim) {
    ConeGenerators g = double_description(ineqs, eqs, dim);
    return from_rays(g.rays, g.lineality, dim);
  }

  const Matrix& rays() const { return p_.rays(); }
  const Matrix& lineality() const { return p_.lineality(); }
  std::size_t ambient_dim() const { return p_.ambient_dim(); }
  int dim() const { return p_.dim(); }
  bool is_pointed() const { return p_.is_pointed(); }
  bool is_full_dimensional() const { return p_.is_full_dimensional(); }
  const Polyhedron& as_polyhedron() const { return p_; }

  /// Facet normals a with a.x >= 0.
  Matrix inequalities() const {
    Matrix out;
    for (const auto& f : p_.facets()) out.push_back(drop_last(f));
    return out;
  }
  Matrix equations() const {
    Matrix out;
    for (const auto& e : p_.equations()) out.push_back(drop_last(e));
    return out;
  }

  bool contains(const Vec& x) const { return p_.contains(x); }
  bool contains(const Cone& c) const { return p_.contains(c.p_); }
  bool contains_relative_interior(const Vec& x) const {
    if (!contains(x)) return false;
    for (const auto& a : inequalities()) {
      if (dot(a, x).is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const Cone& a, const Cone& b) { return a.p_ == b.p_; }
  friend bool operator<(const Cone& a, const Cone& b) { return a.p_ < b.p_; }
  std::string str() const {
    std::string s = "cone{";
    for (std::size_t i = 0; i < rays().size(); ++i) s += (i ? "," : "") + to_string(rays()[i]);
    s += "}";
    if (!lineality().empty()) {
      s += "+span{";
      for (std::size_t i = 0; i < lineality().size(); ++i) s += (i ? "," : "") + to_string(lineality()[i]);
      s += "}";
    }
    return s;
  }

 private:
  Polyhedron p_ = Polyhedron::point({});
};

inline Cone tail_cone(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("tail_cone: empty polyhedron");
  return Cone::from_rays(p.rays(), p.lineality(), p.ambient_dim());
}

/// Minkowski sum. The empty polyhedron annihilates: empty + X = empty.
inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("minkowski_sum: ambient rank mismatch");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.ambient_dim());
  Matrix pts;
  for (const auto& u : a.vertices()) {
    for (const auto& v : b.vertices()) pts.push_back(u + v);
  }
  Matrix rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  Matrix lin = a.lineality();
  lin.insert(lin.end(), b.lineality().begin(), b.lineality().end());
  return Polyhedron::from_generators(pts, rays, lin, a.ambient_dim());
}

inline Polyhedron intersection(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersection: ambient rank mismatch");
  if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.ambient_dim());
  Matrix ineqs = a.facets();
  ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
  Matrix eqs = a.equations();
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return Polyhedron::from_homogeneous(ineqs, eqs, a.ambient_dim());
}

inline Cone intersection(const Cone& a, const Cone& b) {
  return Cone(intersection(a.as_polyhedron(), b.as_polyhedron()));
}

/// The face of p on which <., u> attains its minimum. Throws if <., u> is unbounded below on p.
inline Polyhedron face_of(const Polyhedron& p, const Vec& u) {
  if (u.size() != p.ambient_dim()) throw std::invalid_argument("face_of: ambient rank mismatch");
  if (p.is_empty()) return p;
  for (const auto& r : p.rays()) {
    if (dot(r, u).sign() < 0) throw std::domain_error("face_of: functional unbounded below on " + p.str());
  }
  for (const auto& l : p.lineality()) {
    if (!dot(l, u).is_zero()) throw std::domain_error("face_of: functional unbounded below on " + p.str());
  }
  Rat m = dot(p.vertices().front(), u);
  for (const auto& v : p.vertices()) m = std::min(m, dot(v, u));
  Matrix pts, rays;
  for (const auto& v : p.vertices()) {
    if (dot(v, u) == m) pts.push_back(v);
  }
  for (const auto& r : p.rays()) {
    if (dot(r, u).is_zero()) rays.push_back(r);
  }
  return Polyhedron::from_generators(pts, rays, p.lineality(), p.ambient_dim());
}

/// Minimum of <., u> over p (u must lie in the dual of the tail cone).
inline Rat support_min(const Polyhedron& p, const Vec& u) {
  if (p.is_empty()) throw std::domain_error("support_min: empty polyhedron");
  for (const auto& r : p.rays()) {
    if (dot(r, u).sign() < 0) throw std::domain_error("support_min: functional unbounded below");
  }
  for (const auto& l : p.lineality()) {
    if (!dot(l, u).is_zero()) throw std::domain_error("support_min: functional unbounded below");
  }
  Rat m = dot(p.vertices().front(), u);
  for (const auto& v : p.vertices()) m = std::min(m, dot(v, u));
  return m;
}

namespace detail {

struct GeneratorSubset {
  std::vector<bool> vertices;
  std::vector<bool> rays;
  friend bool operator<(const GeneratorSubset& a, const GeneratorSubset& b) {
    if (a.vertices != b.vertices) return a.vertices < b.vertices;
    return a.rays < b.rays;
  }
  friend bool operator==(const GeneratorSubset&, const GeneratorSubset&) = default;
};

inline Polyhedron build_face(const Polyhedron& p, const GeneratorSubset& s) {
  Matrix pts, rays;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (s.vertices[i]) pts.push_back(p.vertices()[i]);
  }
  for (std::size_t i = 0; i < p.rays().size(); ++i) {
    if (s.rays[i]) rays.push_back(p.rays()[i]);
  }
  return Polyhedron::from_generators(pts, rays, p.lineality(), p.ambient_dim());
}

inline GeneratorSubset tight_on(const Polyhedron& p, const GeneratorSubset& within, const Vec& facet) {
  GeneratorSubset s = within;
  for (std::size_t i = 0; i < p.vertices().size(); ++i) {
    if (s.vertices[i] && !dot(facet, append(p.vertices()[i], 1)).is_zero()) s.vertices[i] = false;
  }
  for (std::size_t i = 0; i < p.rays().size(); ++i) {
    if (s.rays[i] && !dot(facet, append(p.rays()[i], 0)).is_zero()) s.rays[i] = false;
  }
  return s;
}

}  // namespace detail

/// All nonempty faces of p, including p itself.
inline std::vector<Polyhedron> faces(const Polyhedron& p) {
  if (p.is_empty()) return {};
  using detail::GeneratorSubset;
  GeneratorSubset all{std::vector<bool>(p.vertices().size(), true), std::vector<bool>(p.rays().size(), true)};
  std::set<GeneratorSubset> seen{all};
  std::vector<GeneratorSubset> queue{all};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    GeneratorSubset cur = queue[qi];
    for (const auto& f : p.facets()) {
      GeneratorSubset next = detail::tight_on(p, cur, f);
      bool any_vertex = std::find(next.vertices.begin(), next.vertices.end(), true) != next.vertices.end();
      if (!any_vertex) continue;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::vector<Polyhedron> out;
  for (const auto& s : queue) out.push_back(detail::build_face(p, s));
  std::sort(out.begin(), out.end());
  return out;
}

/// Facets of p as polyhedra (faces of dimension dim(p) - 1).
inline std::vector<Polyhedron> facet_faces(const Polyhedron& p) {
  std::vector<Polyhedron> out;
  if (p.is_empty()) return out;
  using detail::GeneratorSubset;
  GeneratorSubset all{std::vector<bool>(p.vertices().size(), true), std::vector<bool>(p.rays().size(), true)};
  for (const auto& f : p.facets()) {
    GeneratorSubset s = detail::tight_on(p, all, f);
    if (std::find(s.vertices.begin(), s.vertices.end(), true) == s.vertices.end()) continue;
    out.push_back(detail::build_face(p, s));
  }
  return out;
}

/// True iff q is a face of p (the empty set counts as a face).
inline bool is_face(const Polyhedron& q, const Polyhedron& p) {
  if (q.is_empty()) return true;
  if (p.is_empty()) return false;
  if (q.ambient_dim() != p.ambient_dim()) return false;
  if (!p.contains(q)) return false;
  using detail::GeneratorSubset;
  GeneratorSubset s{std::vector<bool>(p.vertices().size(), true), std::vector<bool>(p.rays().size(), true)};
  for (const auto& f : p.facets()) {
    bool tight = true;
    for (const auto& v : q.vertices()) {
      if (!dot(f, append(v, 1)).is_zero()) tight = false;
    }
    for (const auto& r : q.rays()) {
      if (!dot(f, append(r, 0)).is_zero()) tight = false;
    }
    if (tight) s = detail::tight_on(p, s, f);
  }
  return detail::build_face(p, s) == q;
}

inline bool is_face(const Cone& t, const Cone& s) { return is_face(t.as_polyhedron(), s.as_polyhedron()); }

inline std::vector<Cone> faces(const Cone& c) {
  std::vector<Cone> out;
  for (auto& f : faces(c.as_polyhedron())) out.emplace_back(std::move(f));
  return out;
}

inline Cone dual_cone(const Cone& c) {
  ConeGenerators g = double_description(c.rays(), c.lineality(), c.ambient_dim());
  return Cone::from_rays(g.rays, g.lineality, c.ambient_dim());
}

/// Image of p under the linear map x -> A x (A given row major, rows = target rank).
inline Polyhedron linear_image(const Polyhedron& p, const Matrix& a) {
  std::size_t target = a.size();
  if (p.is_empty()) return Polyhedron::empty(target);
  auto apply = [&](const Vec& x) {
    Vec y(target);
    for (std::size_t i = 0; i < target; ++i) y[i] = dot(a[i], x);
    return y;
  };
  Matrix pts, rays, lin;
  for (const auto& v : p.vertices()) pts.push_back(apply(v));
  for (const auto& r : p.rays()) rays.push_back(apply(r));
  for (const auto& l : p.lineality()) lin.push_back(apply(l));
  return Polyhedron::from_generators(pts, rays, lin, target);
}

}  // namespace divpoly
