// Base curves, rational divisors, principality and section spaces.
//
// The projective line is fully computable: points carry rational coordinates
// or infinity, and sections are handled as explicit polynomials. Abstract
// curves carry only a genus, so several answers become three-valued.
#pragma once

#include "divpoly/linalg.hpp"
#include "divpoly/polynomial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace divpoly {

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}
inline Verdict operator&&(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Yes;
}
inline Verdict verdict(bool b) { return b ? Verdict::Yes : Verdict::No; }

struct CurvePoint {
  std::string label;
  std::optional<Rat> coord;  // projective line only; nullopt with `at_infinity`
  bool at_infinity = false;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

class Curve {
 public:
  enum class Kind { ProjectiveLine, Abstract };

  Curve() = default;

  /// Points given as (label, coordinate); a missing coordinate means infinity.
  static Curve projective_line(const std::vector<std::pair<std::string, std::optional<Rat>>>& pts) {
    Curve c;
    c.kind_ = Kind::ProjectiveLine;
    for (const auto& [label, coord] : pts) c.add_point(label, coord, !coord.has_value());
    return c;
  }
  static Curve abstract(int genus, const std::vector<std::string>& labels) {
    if (genus < 0) throw std::invalid_argument("Curve: negative genus");
    Curve c;
    c.kind_ = Kind::Abstract;
    c.genus_ = genus;
    for (const auto& l : labels) c.add_point(l, std::nullopt, false);
    return c;
  }

  Kind kind() const { return kind_; }
  bool is_p1() const { return kind_ == Kind::ProjectiveLine; }
  int genus() const { return genus_; }
  const std::vector<CurvePoint>& points() const { return points_; }
  bool has_point(const std::string& label) const { return find(label) != nullptr; }
  const CurvePoint& point(const std::string& label) const {
    const CurvePoint* p = find(label);
    if (!p) throw std::invalid_argument("Curve: unknown point '" + label + "'");
    return *p;
  }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& p : points_) out.push_back(p.label);
    return out;
  }

  /// Adds a point distinct from all named points. On the projective line it gets
  /// the least positive integer coordinate not yet used.
  Curve with_fresh_point(const std::string& label) const {
    if (has_point(label)) throw std::invalid_argument("Curve: duplicate point '" + label + "'");
    Curve c = *this;
    if (is_p1()) {
      long long k = 2;
      while (true) {
        bool used = false;
        for (const auto& p : points_) {
          if (p.coord && *p.coord == Rat(k)) used = true;
        }
        if (!used) break;
        ++k;
      }
      c.add_point(label, Rat(k), false);
    } else {
      c.add_point(label, std::nullopt, false);
    }
    return c;
  }
  Curve with_points(const std::vector<CurvePoint>& extra) const {
    Curve c = *this;
    for (const auto& p : extra) c.add_point(p.label, p.coord, p.at_infinity);
    return c;
  }

  /// Same kind, genus and point set (order-insensitive).
  bool same_curve(const Curve& o) const {
    if (kind_ != o.kind_ || genus_ != o.genus_ || points_.size() != o.points_.size()) return false;
    for (const auto& p : points_) {
      const CurvePoint* q = o.find(p.label);
      if (!q || !(*q == p)) return false;
    }
    return true;
  }
  friend bool operator==(const Curve& a, const Curve& b) { return a.same_curve(b); }

 private:
  void add_point(const std::string& label, std::optional<Rat> coord, bool inf) {
    if (label.empty()) throw std::invalid_argument("Curve: empty point label");
    if (has_point(label)) throw std::invalid_argument("Curve: duplicate point '" + label + "'");
    if (is_p1()) {
      for (const auto& p : points_) {
        if ((inf && p.at_infinity) || (!inf && p.coord && coord && *p.coord == *coord)) {
          throw std::invalid_argument("Curve: points '" + p.label + "' and '" + label + "' coincide");
        }
      }
    }
    points_.push_back({label, inf ? std::nullopt : coord, inf});
  }
  const CurvePoint* find(const std::string& label) const {
    for (const auto& p : points_) {
      if (p.label == label) return &p;
    }
    return nullptr;
  }

  Kind kind_ = Kind::ProjectiveLine;
  int genus_ = 0;
  std::vector<CurvePoint> points_;
};

/// Finitely supported Q-linear combination of named points; zero coefficients are not stored.
class QDivisor {
 public:
  QDivisor() = default;
  QDivisor(std::initializer_list<std::pair<const std::string, Rat>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }
  explicit QDivisor(const std::map<std::string, Rat>& m) {
    for (const auto& [k, v] : m) set(k, v);
  }

  const std::map<std::string, Rat>& coeffs() const { return c_; }
  Rat operator[](const std::string& p) const {
    auto it = c_.find(p);
    return it == c_.end() ? Rat(0) : it->second;
  }
  void set(const std::string& p, const Rat& v) {
    if (v.is_zero()) c_.erase(p);
    else c_[p] = v;
  }
  void add(const std::string& p, const Rat& v) { set(p, (*this)[p] + v); }
  bool is_zero() const { return c_.empty(); }
  bool is_integral() const {
    for (const auto& [k, v] : c_) {
      if (!v.is_integer()) return false;
    }
    return true;
  }

  friend QDivisor operator+(const QDivisor& a, const QDivisor& b) {
    QDivisor r = a;
    for (const auto& [k, v] : b.c_) r.add(k, v);
    return r;
  }
  friend QDivisor operator-(const QDivisor& a, const QDivisor& b) {
    QDivisor r = a;
    for (const auto& [k, v] : b.c_) r.add(k, -v);
    return r;
  }
  friend QDivisor operator*(const Rat& s, const QDivisor& a) {
    QDivisor r;
    for (const auto& [k, v] : a.c_) r.set(k, s * v);
    return r;
  }
  friend bool operator==(const QDivisor&, const QDivisor&) = default;
  /// Coefficientwise a <= b.
  friend bool leq(const QDivisor& a, const QDivisor& b) {
    const QDivisor diff = b - a;
    for (const auto& [k, v] : diff.c_) {
      if (v.sign() < 0) return false;
    }
    return true;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : c_) {
      if (!s.empty()) s += " + ";
      s += v.str() + "*[" + k + "]";
    }
    return s;
  }

 private:
  std::map<std::string, Rat> c_;
};

inline QDivisor floor_div(const QDivisor& d) {
  QDivisor r;
  for (const auto& [k, v] : d.coeffs()) r.set(k, rat_floor(v));
  return r;
}

inline Rat degree(const QDivisor& d) {
  Rat s;
  for (const auto& [k, v] : d.coeffs()) s += v;
  return s;
}

inline void check_support(const Curve& c, const QDivisor& d) {
  for (const auto& [k, v] : d.coeffs()) {
    if (!c.has_point(k)) throw std::invalid_argument("divisor supported at unknown point '" + k + "'");
  }
}

inline Verdict is_principal(const Curve& c, const QDivisor& d) {
  check_support(c, d);
  if (!d.is_integral() || !degree(d).is_zero()) return Verdict::No;
  if (d.is_zero() || c.genus() == 0) return Verdict::Yes;
  return Verdict::Unknown;
}

/// Some positive integer multiple of d is principal.
inline Verdict has_principal_multiple(const Curve& c, const QDivisor& d) {
  check_support(c, d);
  if (!degree(d).is_zero()) return Verdict::No;
  if (d.is_zero() || c.genus() == 0) return Verdict::Yes;
  return Verdict::Unknown;
}

/// h^0 of the round-down; an interval [lo, hi] when it is not determined by the genus alone.
struct H0Value {
  long long lo = 0;
  long long hi = 0;
  bool exact() const { return lo == hi; }
  long long value() const {
    if (!exact()) throw std::domain_error("h0 is only known up to an interval");
    return lo;
  }
  friend bool operator==(const H0Value&, const H0Value&) = default;
  std::string str() const { return exact() ? std::to_string(lo) : "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }
};

inline H0Value h0(const Curve& c, const QDivisor& d) {
  check_support(c, d);
  long long n = degree(floor_div(d)).to_ll();
  const long long g = c.genus();
  if (g == 0) {
    long long v = std::max(0LL, n + 1);
    return {v, v};
  }
  if (n < 0) return {0, 0};
  if (n >= 2 * g - 1) return {n + 1 - g, n + 1 - g};
  return {std::max(0LL, n + 1 - g), n + 1};
}

/// Explicit basis of H^0(P^1, floor(d)). Each section is g(z) * prod_p (z - p)^(-a_p) over
/// the finite points p with a = floor(d), where g ranges over 1, z, ..., z^deg.
struct SectionSpace {
  QDivisor divisor;             // floor(d), integral
  std::vector<UniPoly> basis;   // the g's
  UniPoly numerator_factor;     // prod over a_p < 0 of (z - p)^(-a_p)
  UniPoly denominator;          // prod over a_p > 0 of (z - p)^(a_p)

  std::size_t size() const { return basis.size(); }
  UniPoly numerator(std::size_t i) const { return basis[i] * numerator_factor; }
  std::string section_str(std::size_t i) const {
    auto wrap = [](std::string t) { return t.find_first_of("+-", 1) == std::string::npos ? t : "(" + t + ")"; };
    return wrap(numerator(i).str("z")) + "/" + wrap(denominator.str("z"));
  }
};

inline UniPoly linear_factor(const Rat& p) { return UniPoly(std::vector<Rat>{-p, Rat(1)}); }

inline SectionSpace section_basis(const Curve& c, const QDivisor& d) {
  if (!c.is_p1()) throw std::domain_error("section_basis: explicit sections need the projective line");
  check_support(c, d);
  SectionSpace s;
  s.divisor = floor_div(d);
  s.numerator_factor = UniPoly::constant(1);
  s.denominator = UniPoly::constant(1);
  for (const auto& [label, a] : s.divisor.coeffs()) {
    const CurvePoint& p = c.point(label);
    if (p.at_infinity) continue;
    long long e = a.to_ll();
    if (e > 0) s.denominator = s.denominator * linear_factor(*p.coord).pow(static_cast<std::size_t>(e));
    else s.numerator_factor = s.numerator_factor * linear_factor(*p.coord).pow(static_cast<std::size_t>(-e));
  }
  long long n = degree(s.divisor).to_ll();
  for (long long j = 0; j <= n; ++j) s.basis.push_back(UniPoly::monomial(static_cast<std::size_t>(j)));
  return s;
}

/// The polynomial G with g * prod (z-p)^(-a_p) = G * prod (z-p)^(-t_p), for integral a <= t.
inline UniPoly rewrite_in(const Curve& c, const UniPoly& g, const QDivisor& a, const QDivisor& t) {
  UniPoly r = g;
  const QDivisor diff = t - a;
  for (const auto& [label, e] : diff.coeffs()) {
    const CurvePoint& p = c.point(label);
    if (e.sign() < 0) throw std::invalid_argument("rewrite_in: source divisor exceeds target");
    if (p.at_infinity) continue;
    r = r * linear_factor(*p.coord).pow(static_cast<std::size_t>(e.to_ll()));
  }
  return r;
}

/// Rank of a family of polynomials, as vectors of coefficients.
inline std::size_t poly_rank(const std::vector<UniPoly>& ps) {
  std::size_t width = 0;
  for (const auto& p : ps) width = std::max(width, p.coeffs().size());
  if (width == 0) return 0;
  Matrix m;
  for (const auto& p : ps) {
    Vec row(width);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) row[i] = p.coeffs()[i];
    m.push_back(std::move(row));
  }
  return rank(m, width);
}

/// Products of the sections of floor(d1) and floor(d2), written over the target floor(t).
inline std::vector<UniPoly> product_polys(const Curve& c, const QDivisor& d1, const QDivisor& d2,
                                          const QDivisor& t) {
  SectionSpace s1 = section_basis(c, d1), s2 = section_basis(c, d2);
  QDivisor tf = floor_div(t);
  QDivisor src = s1.divisor + s2.divisor;
  std::vector<UniPoly> out;
  for (const auto& g1 : s1.basis) {
    for (const auto& g2 : s2.basis) out.push_back(rewrite_in(c, g1 * g2, src, tf));
  }
  return out;
}

inline Verdict products_surjective(const Curve& c, const QDivisor& d1, const QDivisor& d2) {
  check_support(c, d1);
  check_support(c, d2);
  if (c.is_p1()) {
    QDivisor t = d1 + d2;
    auto ps = product_polys(c, d1, d2, t);
    return verdict(static_cast<long long>(poly_rank(ps)) == h0(c, t).value());
  }
  if (is_principal(c, d1) == Verdict::Yes) return Verdict::Yes;
  const long long g = c.genus();
  if (degree(floor_div(d1)) >= Rat(2 * g + 1) && degree(floor_div(d2)) >= Rat(2 * g)) return Verdict::Yes;
  return Verdict::Unknown;
}

}  // namespace divpoly
