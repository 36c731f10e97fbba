// Lattice-point counting, Ehrhart polynomials, volumes, Hilbert bases and
// vertex smoothness. All routines target small ambient rank (at most 3).
#pragma once

#include "divpoly/fan.hpp"
#include "divpoly/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace divpoly {

inline constexpr std::size_t kMaxLatticeRank = 3;

namespace detail {

inline void for_each_box_point(const std::vector<BigInt>& lo, const std::vector<BigInt>& hi,
                               const std::function<void(const Vec&)>& fn) {
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) return;
  }
  std::vector<BigInt> cur = lo;
  while (true) {
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Rat(cur[i]);
    fn(x);
    std::size_t i = 0;
    while (i < n) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) return;
  }
}

inline void bounding_box(const Matrix& pts, std::vector<BigInt>& lo, std::vector<BigInt>& hi) {
  const std::size_t n = pts.front().size();
  lo.assign(n, 0);
  hi.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Rat mn = pts.front()[i], mx = pts.front()[i];
    for (const auto& p : pts) {
      mn = std::min(mn, p[i]);
      mx = std::max(mx, p[i]);
    }
    lo[i] = mn.ceil();
    hi[i] = mx.floor();
  }
}

}  // namespace detail

/// Lattice points of k * p for a bounded polyhedron p.
inline Matrix lattice_points(const Polyhedron& p, long long k = 1) {
  if (p.is_empty()) return {};
  if (!p.is_bounded()) throw std::domain_error("lattice_points: unbounded polyhedron");
  if (k < 0) throw std::invalid_argument("lattice_points: negative dilation");
  if (k == 0) return {zero_vec(p.ambient_dim())};
  Polyhedron q = p.scale(Rat(k));
  std::vector<BigInt> lo, hi;
  detail::bounding_box(q.vertices(), lo, hi);
  Matrix out;
  detail::for_each_box_point(lo, hi, [&](const Vec& x) {
    if (q.contains(x)) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline long long lattice_point_count(const Polyhedron& p, long long k = 1) {
  return static_cast<long long>(lattice_points(p, k).size());
}

/// Ehrhart polynomial of a lattice polytope, interpolated from E(0) = 1 and E(1..dim).
inline UniPoly ehrhart(const Polyhedron& p) {
  if (p.is_empty()) throw std::domain_error("ehrhart: empty polyhedron");
  if (!p.is_bounded()) throw std::domain_error("ehrhart: unbounded polyhedron");
  for (const auto& v : p.vertices()) {
    if (!is_integral(v)) throw std::domain_error("ehrhart: non-lattice vertex " + to_string(v));
  }
  const int d = p.dim();
  if (d > static_cast<int>(kMaxLatticeRank)) throw std::domain_error("ehrhart: dimension above supported limit");
  std::vector<std::pair<Rat, Rat>> pts{{Rat(0), Rat(1)}};
  for (int k = 1; k <= d; ++k) pts.emplace_back(Rat(k), Rat(lattice_point_count(p, k)));
  return UniPoly::interpolate(pts);
}

/// Simplices (as vertex lists) of a pulling triangulation of a bounded polyhedron.
inline std::vector<Matrix> triangulate(const Polyhedron& p) {
  if (p.is_empty()) return {};
  if (!p.is_bounded()) throw std::domain_error("triangulate: unbounded polyhedron");
  if (p.dim() == 0) return {{p.vertices().front()}};
  const Vec& v0 = p.vertices().front();
  std::vector<Matrix> out;
  for (const auto& f : facet_faces(p)) {
    if (f.contains(v0)) continue;
    for (auto s : triangulate(f)) {
      s.insert(s.begin(), v0);
      out.push_back(std::move(s));
    }
  }
  return out;
}

/// Lebesgue volume normalized so that the unit cube has volume 1; zero when p is not full-dimensional.
inline Rat euclidean_volume(const Polyhedron& p) {
  if (p.is_empty()) return 0;
  if (!p.is_bounded()) throw std::domain_error("euclidean_volume: unbounded polyhedron");
  const std::size_t n = p.ambient_dim();
  if (!p.is_full_dimensional()) return 0;
  if (n == 0) return 1;
  BigInt fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  Rat total;
  for (const auto& s : triangulate(p)) {
    Matrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(s[i] - s[0]);
    total += abs(det(m));
  }
  return total / Rat(fact);
}

/// Hilbert basis of the semigroup c ∩ Z^n for a pointed cone c.
inline Matrix hilbert_basis(const Cone& c) {
  if (!c.is_pointed()) throw std::domain_error("hilbert_basis: cone is not pointed");
  const std::size_t n = c.ambient_dim();
  if (n > kMaxLatticeRank + 1) throw std::domain_error("hilbert_basis: rank above supported limit");
  const Matrix& rays = c.rays();
  const std::size_t k = static_cast<std::size_t>(c.dim());
  if (k == 0) return {};
  std::set<Vec> cand(rays.begin(), rays.end());
  // lattice points in the half-open parallelepipeds of each simplicial subcone
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Matrix sub;
    for (auto i : idx) sub.push_back(rays[i]);
    if (rank(sub, n) == k) {
      Matrix corners{zero_vec(n)};
      for (const auto& r : sub) {
        std::size_t m = corners.size();
        for (std::size_t j = 0; j < m; ++j) corners.push_back(corners[j] + r);
      }
      std::vector<BigInt> lo, hi;
      detail::bounding_box(corners, lo, hi);
      detail::for_each_box_point(lo, hi, [&](const Vec& x) {
        if (is_zero(x)) return;
        auto lam = solve_columns(sub, x);
        if (!lam) return;
        for (const auto& l : *lam) {
          if (l.sign() < 0 || l >= Rat(1)) return;
        }
        cand.insert(x);
      });
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == rays.size() - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  Matrix out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& y : cand) {
      if (y == x) continue;
      Vec z = x - y;
      if (!is_zero(z) && c.contains(z)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  return out;
}

/// Primitive edge and ray directions at vertex v of p.
inline Matrix edge_directions(const Polyhedron& p, const Vec& v) {
  bool found = false;
  for (const auto& w : p.vertices()) {
    if (w == v) found = true;
  }
  if (!found) throw std::invalid_argument("edge_directions: not a vertex: " + to_string(v));
  Matrix out;
  for (const auto& f : faces(p)) {
    if (f.dim() != 1 || !f.contains(v)) continue;
    if (f.vertices().size() == 2) {
      const Vec& w = f.vertices()[0] == v ? f.vertices()[1] : f.vertices()[0];
      out.push_back(primitive(w - v));
    } else {
      for (const auto& r : f.rays()) out.push_back(primitive(r));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Smooth at v: the primitive edge directions at v are dim(p) many and form a lattice basis.
inline bool is_smooth_at_vertex(const Polyhedron& p, const Vec& v) {
  if (!is_integral(v)) throw std::invalid_argument("is_smooth_at_vertex: vertex is not a lattice point");
  if (!p.is_pointed()) throw std::invalid_argument("is_smooth_at_vertex: polyhedron has lineality");
  Matrix dirs = edge_directions(p, v);
  if (static_cast<int>(dirs.size()) != p.dim()) return false;
  return maximal_minor_gcd(dirs) == 1;
}

}  // namespace divpoly
