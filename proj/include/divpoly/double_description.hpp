// Double description: generators of {x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}.
//
// Lineality is tracked explicitly. Rays are stored as canonical representatives
// modulo the lineality space (zero at the lineality pivot columns) scaled to
// primitive integer vectors, so two equal cones produce identical output.
#pragma once

#include "divpoly/linalg.hpp"

#include <algorithm>
#include <vector>

namespace divpoly {

struct ConeGenerators {
  Matrix rays;       // primitive, reduced modulo lineality, sorted
  Matrix lineality;  // reduced row echelon basis scaled to primitive rows
};

namespace detail {

inline Matrix canonical_lineality(const Matrix& lin, std::size_t dim) {
  if (lin.empty()) return {};
  Echelon e = rref(lin, dim);
  Matrix out;
  for (auto& row : e.rows) out.push_back(primitive(row));
  return out;
}

/// Reduce v modulo the row space of an echelon basis (rows from canonical_lineality).
inline Vec reduce_mod(const Vec& v, const Matrix& lin_rref, const std::vector<std::size_t>& pivots) {
  Vec r = v;
  for (std::size_t i = 0; i < lin_rref.size(); ++i) {
    const Rat& c = r[pivots[i]];
    if (c.is_zero()) continue;
    Rat f = c / lin_rref[i][pivots[i]];
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (!lin_rref[i][j].is_zero()) r[j] -= f * lin_rref[i][j];
    }
  }
  return r;
}

inline std::vector<std::size_t> pivots_of(const Matrix& lin_rref) {
  std::vector<std::size_t> p;
  for (const auto& row : lin_rref) {
    std::size_t j = 0;
    while (j < row.size() && row[j].is_zero()) ++j;
    p.push_back(j);
  }
  return p;
}

/// Drop zero vectors, reduce modulo lineality, rescale, deduplicate, and keep
/// only rays that are extreme with respect to the given constraint rows.
inline Matrix prune_rays(const Matrix& rays, const Matrix& constraints, const Matrix& lin,
                         std::size_t dim) {
  Matrix lin_c = canonical_lineality(lin, dim);
  auto piv = pivots_of(lin_c);
  const std::size_t target = dim - lin_c.size() - 1;
  Matrix out;
  for (const auto& r0 : rays) {
    Vec r = reduce_mod(r0, lin_c, piv);
    if (is_zero(r)) continue;
    r = primitive(r);
    if (std::find(out.begin(), out.end(), r) != out.end()) continue;
    Matrix tight;
    for (const auto& a : constraints) {
      if (dot(a, r).is_zero()) tight.push_back(a);
    }
    if (rank(tight, dim) != target) continue;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ConeGenerators double_description(const Matrix& ineqs, const Matrix& eqs, std::size_t dim) {
  Matrix all;
  all.reserve(ineqs.size() + 2 * eqs.size());
  for (const auto& e : eqs) {
    all.push_back(e);
    all.push_back(-e);
  }
  for (const auto& a : ineqs) all.push_back(a);

  Matrix lin;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim);
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  Matrix rays;
  Matrix processed;

  for (const auto& a : all) {
    if (a.size() != dim) throw std::invalid_argument("double_description: constraint dimension mismatch");
    if (is_zero(a)) continue;
    processed.push_back(a);
    std::size_t j = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (!dot(a, lin[i]).is_zero()) {
        j = i;
        break;
      }
    }
    if (j < lin.size()) {
      Vec l0 = lin[j];
      Rat al0 = dot(a, l0);
      if (al0.sign() < 0) {
        l0 = -l0;
        al0 = -al0;
      }
      Matrix new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == j) continue;
        Rat c = dot(a, lin[i]) / al0;
        new_lin.push_back(c.is_zero() ? lin[i] : lin[i] - c * l0);
      }
      for (auto& r : rays) {
        Rat c = dot(a, r) / al0;
        if (!c.is_zero()) r = r - c * l0;
      }
      rays.push_back(l0);
      lin = std::move(new_lin);
      continue;
    }
    Matrix pos, neg, next;
    std::vector<Rat> pos_val, neg_val;
    for (const auto& r : rays) {
      Rat v = dot(a, r);
      if (v.sign() > 0) {
        pos.push_back(r);
        pos_val.push_back(v);
        next.push_back(r);
      } else if (v.sign() < 0) {
        neg.push_back(r);
        neg_val.push_back(v);
      } else {
        next.push_back(r);
      }
    }
    for (std::size_t p = 0; p < pos.size(); ++p) {
      for (std::size_t n = 0; n < neg.size(); ++n) {
        next.push_back(pos_val[p] * neg[n] - neg_val[n] * pos[p]);
      }
    }
    rays = detail::prune_rays(next, processed, lin, dim);
  }

  ConeGenerators g;
  g.lineality = detail::canonical_lineality(lin, dim);
  g.rays = detail::prune_rays(rays, processed, lin, dim);
  return g;
}

}  // namespace divpoly
