// Affine cones over divisorial polytopes: the cone divisor of a support function,
// recovery in both directions, and degrees of generators of the section algebra.
#pragma once

#include "divpoly/lattice.hpp"
#include "divpoly/support_function.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

/// Coefficient at P is the epigraph of -h_P in N + Z; the tail is the epigraph of -h^0.
inline PolyhedralDivisor cone_divisor(const SupportFunction& h) {
  AmpleReport a = is_ample(h);
  if (a.verdict == Verdict::No) throw std::invalid_argument("cone_divisor: support function is not ample: " + a.failures.front());
  const std::size_t n = h.ambient_dim();
  Matrix tail_rays{append(zero_vec(n), Rat(1))};
  for (const auto& [sigma, g] : h.linear()) {
    for (const auto& r : sigma.rays()) tail_rays.push_back(append(r, -dot(g, r)));
    for (const auto& l : sigma.lineality()) {
      tail_rays.push_back(append(l, -dot(g, l)));
      tail_rays.push_back(append(-l, dot(g, l)));
    }
  }
  Cone tail = Cone::from_rays(tail_rays, n + 1);
  if (!tail.is_pointed()) throw std::invalid_argument("cone_divisor: h^0 is linear along a line, tail cone not pointed");
  std::map<std::string, Polyhedron> coeffs;
  for (const auto& [label, f] : h.pieces()) {
    Matrix pts;
    for (const auto& vp : h.base().slice(label).vertices()) {
      const Vec& v = vp.vertices().front();
      pts.push_back(append(v, -h.value(label, v)));
    }
    coeffs.emplace(label, Polyhedron::from_generators(pts, tail.rays(), {}, n + 1));
  }
  return PolyhedralDivisor(h.curve(), tail, coeffs);
}

namespace detail {

/// f with -f(v) = min of the grading coordinate over the fiber above v, read off the lower facets.
inline std::vector<Affine> lower_envelope(const Polyhedron& p, const std::string& what) {
  const std::size_t n = p.ambient_dim() - 1;
  if (!p.equations().empty()) throw std::invalid_argument(what + ": not full-dimensional, projection to N is not onto");
  std::vector<Affine> out;
  for (const auto& f : p.facets()) {
    const Rat& at = f[n];
    if (at.sign() <= 0) throw std::invalid_argument(what + ": not the epigraph of a function on all of N");
    Vec g(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n));
    out.push_back({Rat(1) / at * g, f[n + 1] / at});
  }
  return out;
}

/// Regions where each affine attains the minimum, keyed by cell.
inline CellFunction linearity_regions(const std::vector<Affine>& fs, std::size_t n) {
  CellFunction out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Matrix ineqs;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (j != i) ineqs.push_back(append(fs[j].gradient - fs[i].gradient, fs[j].constant - fs[i].constant));
    }
    Polyhedron cell = Polyhedron::from_homogeneous(ineqs, {}, n);
    if (cell.dim() == static_cast<int>(n)) out.emplace(cell, fs[i]);
  }
  return out;
}

inline void require_graded(const PolyhedralDivisor& d, const char* what) {
  if (d.ambient_dim() < 2) throw std::invalid_argument(std::string(what) + ": need rank at least 2 (N plus grading)");
  if (!locus(d).complete()) throw std::invalid_argument(std::string(what) + ": locus is not complete");
  const std::size_t m = d.ambient_dim();
  Vec down = zero_vec(m);
  down[m - 1] = Rat(-1);
  if (d.tail().contains(down)) throw std::invalid_argument(std::string(what) + ": fiber unbounded below in the grading");
  if (is_proper(d).verdict == Verdict::No) throw std::invalid_argument(std::string(what) + ": divisor is not proper");
}

}  // namespace detail

/// h_P(v) = -(min grading coordinate over the fiber of D_P above v). Full-dimensional sigma is marked when
/// h|sigma(0) is principal, a face tau when it meets deg D^sigma for a marked sigma containing it.
inline Dualized recover(const PolyhedralDivisor& d) {
  detail::require_graded(d, "recover");
  const std::size_t n = d.ambient_dim() - 1;
  const Curve& curve = d.curve();
  std::vector<Affine> lin = detail::lower_envelope(d.tail().as_polyhedron(), "recover: tail");
  std::vector<Cone> cones;
  std::map<Cone, Vec> linear;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    Matrix ineqs;
    for (std::size_t j = 0; j < lin.size(); ++j) {
      if (j != i) ineqs.push_back(lin[j].gradient - lin[i].gradient);
    }
    Cone c = Cone::from_inequalities(ineqs, {}, n);
    if (c.dim() != static_cast<int>(n)) continue;
    cones.push_back(c);
    linear.emplace(c, lin[i].gradient);
  }
  Fan tailfan = Fan::from_cones(cones, n);
  std::map<std::string, std::vector<Polyhedron>> slices;
  std::map<std::string, CellFunction> pieces;
  for (const auto& [label, p] : d.coeffs()) {
    CellFunction f = detail::linearity_regions(detail::lower_envelope(p, "recover: coefficient at '" + label + "'"), n);
    for (const auto& [c, a] : f) slices[label].push_back(c);
    pieces.emplace(label, std::move(f));
  }
  MarkedFansyDivisor unmarked(curve, tailfan, slices, {});
  SupportFunction h0fn(unmarked, linear, pieces);
  std::vector<Cone> marks;
  for (const auto& sigma : unmarked.maximal_cones()) {
    Verdict v = is_principal(curve, restrict_zero(h0fn, sigma));
    if (v == Verdict::Unknown) throw std::domain_error("recover: principality of h|sigma(0) undecided on " + sigma.str());
    if (v == Verdict::Yes) marks.push_back(sigma);
  }
  MarkedFansyDivisor full(curve, tailfan, slices, marks);
  std::set<Cone> all(marks.begin(), marks.end());
  for (const auto& sigma : marks) {
    Polyhedron deg = degree_poly(dsigma(full, sigma));
    for (const auto& tau : faces(sigma)) {
      if (!intersection(deg, tau.as_polyhedron()).is_empty()) all.insert(tau);
    }
  }
  MarkedFansyDivisor base(curve, tailfan, slices, std::vector<Cone>(all.begin(), all.end()));
  return {base, SupportFunction(base, linear, pieces)};
}

/// Box = slice of the dual tail at grading 1; Psi_P(u) = D((u, 1))_P.
inline DivisorialPolytope recover_divpoly(const PolyhedralDivisor& d) {
  detail::require_graded(d, "recover_divpoly");
  const std::size_t n = d.ambient_dim() - 1;
  Cone dual = dual_cone(d.tail());
  if (!dual.lineality().empty()) throw std::invalid_argument("recover_divpoly: weight polytope is unbounded");
  Matrix pts;
  for (const auto& r : dual.rays()) {
    if (r[n].sign() <= 0) throw std::invalid_argument("recover_divpoly: dual tail has a ray " + to_string(r) + " of grading <= 0");
    pts.push_back(Rat(1) / r[n] * drop_last(r));
  }
  if (pts.empty()) throw std::invalid_argument("recover_divpoly: empty weight polytope");
  Polyhedron box = Polyhedron::from_generators(pts, {}, {}, n);
  std::map<std::string, Piece> pieces;
  for (const auto& [label, p] : d.coeffs()) {
    Piece pc;
    for (const auto& v : p.vertices()) pc.push_back({drop_last(v), v[n]});
    pieces.emplace(label, pc);
  }
  return DivisorialPolytope(d.curve(), box, pieces);
}

/// Coarsest common refinement of the normal fans of the coefficients, inside the dual tail cone.
inline Fan refinement_sigma(const PolyhedralDivisor& d) {
  if (!locus(d).complete()) throw std::invalid_argument("refinement_sigma: locus is not complete");
  std::vector<Fan> fans;
  for (const auto& [label, p] : d.coeffs()) fans.push_back(normal_fan(p));
  return common_refinement(fans, dual_cone(d.tail()));
}

/// max(0, #points with a non-lattice coefficient - 1).
inline long long constant_c(const PolyhedralDivisor& d) {
  long long k = 0;
  for (const auto& [label, p] : d.coeffs()) {
    for (const auto& v : p.vertices()) {
      if (!is_integral(v)) {
        ++k;
        break;
      }
    }
  }
  return std::max(0LL, k - 1);
}

inline long long default_alpha_cap(const Curve& c, long long cc) { return 64 * (4LL * c.genus() + 2 + 2 * cc + 1); }

/// Least alpha with D(alpha u) integral and principal, or alpha even, deg D(alpha u) >= 4g+2+2c and
/// D(alpha/2 u) integral. Undecided principality counts as failure, which can only enlarge alpha.
inline long long alpha(const PolyhedralDivisor& d, const Vec& u, long long c, long long cap = 0) {
  if (!is_integral(u) || !in_dual_of(d.tail(), u)) throw std::invalid_argument("alpha: " + to_string(u) + " is not a lattice point of the dual tail");
  const Curve& curve = d.curve();
  if (cap <= 0) cap = default_alpha_cap(curve, c);
  const Rat bound(4LL * curve.genus() + 2 + 2 * c);
  QDivisor du = evaluate(d, u);
  for (long long a = 1; a <= cap; ++a) {
    QDivisor da = Rat(a) * du;
    if (da.is_integral() && is_principal(curve, da) == Verdict::Yes) return a;
    if (a % 2 == 0 && degree(da) >= bound && (Rat(a / 2) * du).is_integral()) return a;
  }
  throw std::runtime_error("alpha: search cap " + std::to_string(cap) + " exceeded at weight " + to_string(u));
}

struct GeneratorReport {
  Fan sigma_fan;
  long long c = 0;
  std::map<Vec, long long> alphas;
  std::map<Cone, std::set<Vec>> g_tau;
  std::set<Vec> g_all;
  std::set<Vec> g_min;
  std::map<Vec, std::vector<std::string>> generators;  // explicit section bases over g_min
  Verdict normality = Verdict::Unknown;

  std::size_t generator_count() const {
    std::size_t k = 0;
    for (const auto& [u, s] : generators) k += s.size();
    return k;
  }
};

namespace detail {

/// Generators of tau ∩ M: the Hilbert basis, or for a line of lineality the bases of both halves.
inline Matrix cone_generators(const Cone& tau) {
  const auto& lin = tau.lineality();
  if (lin.empty()) return hilbert_basis(tau);
  if (lin.size() > 1) throw std::domain_error("generator_weights: refinement cone " + tau.str() + " has lineality rank > 1");
  const std::size_t m = tau.ambient_dim();
  std::set<Vec> out;
  for (const Rat s : {Rat(1), Rat(-1)}) {
    Cone half = intersection(tau, Cone::from_inequalities({s * lin.front()}, {}, m));
    for (auto& v : hilbert_basis(half)) out.insert(std::move(v));
  }
  return Matrix(out.begin(), out.end());
}

}  // namespace detail

/// G_tau = {sum k_u u : 0 <= k_u <= alpha_u} over generators u of each maximal tau; g_all their union.
inline GeneratorReport generator_weights(const PolyhedralDivisor& d, long long cap = 0) {
  GeneratorReport r;
  r.sigma_fan = refinement_sigma(d);
  r.c = constant_c(d);
  for (const auto& tau : r.sigma_fan.maximal_cones()) {
    std::set<Vec> sums{zero_vec(d.ambient_dim())};
    for (const auto& u : detail::cone_generators(tau)) {
      auto it = r.alphas.find(u);
      if (it == r.alphas.end()) it = r.alphas.emplace(u, alpha(d, u, r.c, cap)).first;
      std::set<Vec> next;
      for (const auto& s : sums) {
        Vec x = s;
        for (long long k = 0; k <= it->second; ++k, x = x + u) next.insert(x);
      }
      sums = std::move(next);
    }
    r.g_all.insert(sums.begin(), sums.end());
    r.g_tau.emplace(tau, std::move(sums));
  }
  return r;
}

namespace detail {

/// Incremental span of polynomials of bounded degree.
class PolySpan {
 public:
  explicit PolySpan(std::size_t width) : width_(width) {}
  std::size_t rank() const { return rows_.size(); }
  void add(const UniPoly& p) {
    if (p.coeffs().size() > width_) throw std::logic_error("PolySpan: section outside the target space");
    Vec v(width_);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) v[i] = p.coeffs()[i];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rat& f = v[pivots_[r]];
      if (f.is_zero()) continue;
      Rat g = f;
      for (std::size_t j = 0; j < width_; ++j) v[j] -= g * rows_[r][j];
    }
    std::size_t piv = 0;
    while (piv < width_ && v[piv].is_zero()) ++piv;
    if (piv == width_) return;
    Rat inv = Rat(1) / v[piv];
    for (auto& x : v) x *= inv;
    // keep earlier rows reduced at the new pivot
    for (auto& row : rows_) {
      if (row[piv].is_zero()) continue;
      Rat g = row[piv];
      for (std::size_t j = 0; j < width_; ++j) row[j] -= g * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
  }

 private:
  std::size_t width_;
  Matrix rows_;
  std::vector<std::size_t> pivots_;
};

/// Section bases per weight, computed on demand.
class SectionCache {
 public:
  explicit SectionCache(const PolyhedralDivisor& d) : d_(d) {}
  const QDivisor& divisor(const Vec& u) {
    auto it = div_.find(u);
    if (it == div_.end()) it = div_.emplace(u, evaluate(d_, u)).first;
    return it->second;
  }
  const SectionSpace& sections(const Vec& u) {
    auto it = sec_.find(u);
    if (it == sec_.end()) it = sec_.emplace(u, section_basis(d_.curve(), divisor(u))).first;
    return it->second;
  }
  /// Adds all products A_a * A_b, written in the basis of A_{a+b}, to `span`.
  void add_products(const Vec& a, const Vec& b, PolySpan& span) {
    const SectionSpace& sa = sections(a);
    const SectionSpace& sb = sections(b);
    const SectionSpace& t = sections(a + b);
    QDivisor src = sa.divisor + sb.divisor;
    for (const auto& g1 : sa.basis) {
      for (const auto& g2 : sb.basis) span.add(rewrite_in(d_.curve(), g1 * g2, src, t.divisor));
    }
  }

 private:
  const PolyhedralDivisor& d_;
  std::map<Vec, QDivisor> div_;
  std::map<Vec, SectionSpace> sec_;
};

inline void require_sieve(const PolyhedralDivisor& d, const char* what) {
  if (!d.tail().is_full_dimensional()) throw std::invalid_argument(std::string(what) + ": tail cone is not full-dimensional");
  if (!d.curve().is_p1()) throw std::domain_error(std::string(what) + ": exact sections need the projective line");
}

/// g_all minus the weights whose sections are spanned by products A_{u'} A_{u-u'} with u' in g_all.
inline std::set<Vec> sieve(const PolyhedralDivisor& d, const std::set<Vec>& g_all) {
  SectionCache cache(d);
  std::set<Vec> out;
  for (const auto& u : g_all) {
    if (is_zero(u)) continue;
    const std::size_t need = cache.sections(u).size();
    if (need == 0) continue;
    PolySpan span(need);
    for (const auto& up : g_all) {
      if (span.rank() == need) break;
      if (is_zero(up) || up == u) continue;
      Vec rest = u - up;
      if (!in_dual_of(d.tail(), rest)) continue;
      cache.add_products(up, rest, span);
    }
    if (span.rank() < need) out.insert(u);
  }
  return out;
}

}  // namespace detail

inline std::set<Vec> minimal_weights(const PolyhedralDivisor& d, long long cap = 0) {
  detail::require_sieve(d, "minimal_weights");
  return detail::sieve(d, generator_weights(d, cap).g_all);
}

/// Weights, minimal weights and explicit section bases. A_0 consists of the constants and is not listed.
/// Off the projective line the sieve is not run and the normality verdict stays Unknown.
inline GeneratorReport generators(const PolyhedralDivisor& d, long long cap = 0) {
  if (!d.tail().is_full_dimensional()) throw std::invalid_argument("generators: tail cone is not full-dimensional");
  GeneratorReport r = generator_weights(d, cap);
  if (!d.curve().is_p1()) return r;
  r.g_min = detail::sieve(d, r.g_all);
  bool degree_one = true;
  for (const auto& u : r.g_min) {
    SectionSpace s = section_basis(d.curve(), evaluate(d, u));
    auto& out = r.generators[u];
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s.section_str(i));
    if (u.back() != Rat(1)) degree_one = false;
  }
  r.normality = verdict(degree_one);
  return r;
}

inline Verdict projectively_normal(const SupportFunction& h, long long cap = 0) {
  if (!h.curve().is_p1()) return Verdict::Unknown;
  AmpleReport a = is_ample(h);
  if (a.verdict != Verdict::Yes) throw std::invalid_argument("projectively_normal: support function is not ample");
  return generators(cone_divisor(h), cap).normality;
}

}  // namespace divpoly
