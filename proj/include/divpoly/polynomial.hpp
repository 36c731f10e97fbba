// Univariate polynomials with rational coefficients.
#pragma once

#include "divpoly/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace divpoly {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long long> coeffs) {
    for (long long x : coeffs) c_.emplace_back(x);
    trim();
  }
  static UniPoly constant(const Rat& a) { return UniPoly(std::vector<Rat>{a}); }
  /// x^k
  static UniPoly monomial(std::size_t k, const Rat& a = 1) {
    std::vector<Rat> c(k + 1);
    c[k] = a;
    return UniPoly(std::move(c));
  }

  /// Coefficients from the constant term upward; empty for the zero polynomial.
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const {
    Rat r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) {
    std::vector<Rat> c = a.c_;
    for (auto& x : c) x *= s;
    return UniPoly(std::move(c));
  }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  UniPoly pow(std::size_t k) const {
    UniPoly r = constant(1);
    for (std::size_t i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Human readable form in the variable `var`, e.g. "3k^2+2k+1".
  std::string str(const std::string& var = "k") const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rat& a = c_[i];
      if (a.is_zero()) continue;
      bool neg = a.sign() < 0;
      Rat m = neg ? -a : a;
      if (!s.empty()) s += neg ? "-" : "+";
      else if (neg) s += "-";
      bool unit = (m == Rat(1));
      if (i == 0 || !unit) s += m.str();
      if (i >= 1) s += var;
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

  /// Unique polynomial of degree < n through n points with distinct abscissae.
  static UniPoly interpolate(const std::vector<std::pair<Rat, Rat>>& pts) {
    UniPoly result;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      UniPoly basis = constant(1);
      Rat denom = 1;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j == i) continue;
        basis = basis * UniPoly(std::vector<Rat>{-pts[j].first, Rat(1)});
        denom *= pts[i].first - pts[j].first;
      }
      result = result + (pts[i].second / denom) * basis;
    }
    return result;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;
};

}  // namespace divpoly
