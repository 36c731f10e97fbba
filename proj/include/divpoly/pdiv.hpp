// Polyhedral divisors on curves.
#pragma once

#include "divpoly/curve.hpp"
#include "divpoly/fan.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

/// sum_P Delta_P * P with a common pointed tail cone. Coefficients equal to the
/// tail cone itself are not stored; an empty polyhedron marks a removed point.
class PolyhedralDivisor {
 public:
  PolyhedralDivisor() = default;
  PolyhedralDivisor(Curve curve, Cone tail, const std::map<std::string, Polyhedron>& coeffs)
      : curve_(std::move(curve)), tail_(std::move(tail)) {
    if (!tail_.is_pointed()) throw std::invalid_argument("PolyhedralDivisor: tail cone is not pointed");
    for (const auto& [label, p] : coeffs) {
      if (!curve_.has_point(label)) throw std::invalid_argument("PolyhedralDivisor: unknown point '" + label + "'");
      if (p.ambient_dim() != tail_.ambient_dim()) {
        throw std::invalid_argument("PolyhedralDivisor: coefficient rank mismatch at '" + label + "'");
      }
      if (!p.is_empty() && !(tail_cone(p) == tail_)) {
        throw std::invalid_argument("PolyhedralDivisor: coefficient at '" + label + "' has tail " +
                                    tail_cone(p).str() + ", expected " + tail_.str());
      }
      if (p == tail_.as_polyhedron()) continue;
      coeffs_.emplace(label, p);
    }
  }

  const Curve& curve() const { return curve_; }
  const Cone& tail() const { return tail_; }
  std::size_t ambient_dim() const { return tail_.ambient_dim(); }
  /// Nontrivial coefficients only.
  const std::map<std::string, Polyhedron>& coeffs() const { return coeffs_; }
  Polyhedron coefficient(const std::string& label) const {
    auto it = coeffs_.find(label);
    return it == coeffs_.end() ? tail_.as_polyhedron() : it->second;
  }
  std::vector<std::string> support() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : coeffs_) out.push_back(k);
    return out;
  }

  friend bool operator==(const PolyhedralDivisor& a, const PolyhedralDivisor& b) {
    return a.curve_ == b.curve_ && a.tail_ == b.tail_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    std::string s = "tail " + tail_.str();
    for (const auto& [k, v] : coeffs_) s += "; [" + k + "] " + v.str();
    return s;
  }

 private:
  Curve curve_;
  Cone tail_;
  std::map<std::string, Polyhedron> coeffs_;
};

struct Locus {
  std::vector<std::string> removed;
  bool complete() const { return removed.empty(); }
};

inline Locus locus(const PolyhedralDivisor& d) {
  Locus l;
  for (const auto& [k, p] : d.coeffs()) {
    if (p.is_empty()) l.removed.push_back(k);
  }
  return l;
}

inline bool in_dual_of(const Cone& tail, const Vec& u) {
  for (const auto& r : tail.rays()) {
    if (dot(r, u).sign() < 0) return false;
  }
  for (const auto& l : tail.lineality()) {
    if (!dot(l, u).is_zero()) return false;
  }
  return true;
}

/// D(u) = sum_P min_{v in Delta_P} <v,u> P over the locus.
inline QDivisor evaluate(const PolyhedralDivisor& d, const Vec& u) {
  if (u.size() != d.ambient_dim()) throw std::invalid_argument("evaluate: rank mismatch");
  if (!in_dual_of(d.tail(), u)) throw std::domain_error("evaluate: weight " + to_string(u) + " outside the dual tail cone");
  QDivisor r;
  for (const auto& [k, p] : d.coeffs()) {
    if (p.is_empty()) continue;
    r.set(k, support_min(p, u));
  }
  return r;
}

/// Minkowski sum of all coefficients; empty when some coefficient is empty.
inline Polyhedron degree_poly(const PolyhedralDivisor& d) {
  Polyhedron acc = d.tail().as_polyhedron();
  for (const auto& [k, p] : d.coeffs()) acc = minkowski_sum(acc, p);
  return acc;
}

struct ProperReport {
  Verdict verdict = Verdict::Yes;
  std::string reason;
  std::optional<Vec> witness;  // a degree vertex outside the tail, or an offending weight
};

inline ProperReport is_proper(const PolyhedralDivisor& d) {
  ProperReport rep;
  if (!locus(d).complete()) return rep;
  Polyhedron deg = degree_poly(d);
  const Polyhedron& tail = d.tail().as_polyhedron();
  for (const auto& v : deg.vertices()) {
    if (!tail.contains(v)) {
      rep.verdict = Verdict::No;
      rep.witness = v;
      rep.reason = "degree polyhedron has vertex " + to_string(v) + " outside the tail cone";
      return rep;
    }
  }
  if (deg == tail) {
    rep.verdict = Verdict::No;
    rep.reason = "degree polyhedron equals the tail cone";
    return rep;
  }
  Cone dual = dual_cone(d.tail());
  for (const auto& face : faces(dual)) {
    if (face.dim() <= 0) continue;
    if (!support_min(deg, face.as_polyhedron().relative_interior_point()).is_zero()) continue;
    for (const auto& u : face.rays()) {
      Verdict v = has_principal_multiple(d.curve(), evaluate(d, u));
      if (v == Verdict::Yes) continue;
      rep.verdict = rep.verdict && v;
      rep.witness = u;
      rep.reason = "no principal multiple of D(" + to_string(u) + ") certified";
      if (v == Verdict::No) return rep;
    }
  }
  return rep;
}

inline PolyhedralDivisor intersect(const PolyhedralDivisor& a, const PolyhedralDivisor& b) {
  if (!(a.curve() == b.curve())) throw std::invalid_argument("intersect: different curves");
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: rank mismatch");
  Cone tail = intersection(a.tail(), b.tail());
  std::map<std::string, Polyhedron> m;
  for (const auto& label : a.curve().labels()) {
    Polyhedron x = intersection(a.coefficient(label), b.coefficient(label));
    m.emplace(label, x);
  }
  return PolyhedralDivisor(a.curve(), tail, m);
}

/// dp is a face of d in the sense: coefficientwise faces and deg(dp) = deg(d) ∩ tail(dp).
inline bool is_face_rel(const PolyhedralDivisor& dp, const PolyhedralDivisor& d) {
  ProperReport pr = is_proper(d);
  if (pr.verdict == Verdict::No) throw std::invalid_argument("is_face_rel: divisor is not proper: " + pr.reason);
  if (pr.verdict == Verdict::Unknown) throw std::domain_error("is_face_rel: properness undecided: " + pr.reason);
  if (!(dp.curve() == d.curve()) || dp.ambient_dim() != d.ambient_dim()) return false;
  if (!is_face(dp.tail(), d.tail())) return false;
  for (const auto& label : d.curve().labels()) {
    if (!is_face(dp.coefficient(label), d.coefficient(label))) return false;
  }
  Polyhedron lhs = degree_poly(dp);
  Polyhedron rhs = intersection(degree_poly(d), dp.tail().as_polyhedron());
  return lhs == rhs;
}

inline H0Value weight_module_dim(const PolyhedralDivisor& d, const Vec& u) {
  return h0(d.curve(), evaluate(d, u));
}

}  // namespace divpoly
