// Exact rational scalars and dense rational vectors.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace divpoly {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction with positive denominator. Backed by boost's cpp_rational,
/// which normalizes after every operation.
class Rat {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  Rat() = default;
  Rat(int v) : v_(v) {}            // NOLINT(google-explicit-constructor)
  Rat(long v) : v_(v) {}           // NOLINT(google-explicit-constructor)
  Rat(long long v) : v_(v) {}      // NOLINT(google-explicit-constructor)
  Rat(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long long num, long long den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = den < 0 ? value_type(BigInt(-BigInt(num)), BigInt(-BigInt(den))) : value_type(num, den);
  }
  Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    v_ = den < 0 ? value_type(BigInt(-num), BigInt(-den)) : value_type(num, den);
  }
  explicit Rat(value_type v) : v_(std::move(v)) {}

  /// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
  static Rat parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto parse_int = [](std::string_view s) {
      if (s.empty()) throw std::invalid_argument("Rat::parse: empty integer");
      std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (i == s.size()) throw std::invalid_argument("Rat::parse: bad integer");
      for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] < '0' || s[j] > '9') {
          throw std::invalid_argument("Rat::parse: bad integer '" + std::string(s) + "'");
        }
      }
      BigInt v(std::string(s.substr(s[0] == '+' ? 1 : 0)));
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    return Rat(num, den);
  }

  BigInt num() const { return boost::multiprecision::numerator(v_); }
  BigInt den() const { return boost::multiprecision::denominator(v_); }
  const value_type& raw() const { return v_; }

  bool is_integer() const { return den() == 1; }
  bool is_zero() const { return v_ == 0; }
  int sign() const { return v_.sign(); }

  BigInt floor() const {
    BigInt n = num(), d = den();
    BigInt q = n / d;  // truncates toward zero
    if (n % d != 0 && n < 0) q -= 1;
    return q;
  }
  BigInt ceil() const {
    BigInt n = num(), d = den();
    BigInt q = n / d;
    if (n % d != 0 && n > 0) q += 1;
    return q;
  }

  long long to_ll() const {
    if (!is_integer()) throw std::domain_error("Rat::to_ll: not an integer: " + str());
    BigInt n = num();
    if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN)) {
      throw std::overflow_error("Rat::to_ll: out of range");
    }
    return n.convert_to<long long>();
  }
  double to_double() const { return v_.convert_to<double>(); }

  std::string str() const {
    if (is_integer()) return num().str();
    return num().str() + "/" + den().str();
  }

  Rat operator-() const { return Rat(value_type(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  value_type v_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline Rat rat_floor(const Rat& r) { return Rat(r.floor()); }
inline Rat rat_ceil(const Rat& r) { return Rat(r.ceil()); }

inline BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt t = a % b;
    a = b;
    b = t;
  }
  return a;
}
inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = gcd(a, b);
  BigInt r = a / g * b;
  return r < 0 ? BigInt(-r) : r;
}

/// Dense coordinate vector. Lattice vectors are Vec values with integral entries.
using Vec = std::vector<Rat>;

inline Vec make_vec(std::initializer_list<long long> xs) {
  Vec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline Vec zero_vec(std::size_t n) { return Vec(n, Rat(0)); }

inline Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector add: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sub: dimension mismatch");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
inline Vec operator*(const Rat& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

inline bool is_integral(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_integer()) return false;
  }
  return true;
}

/// Positive rescaling of a nonzero vector to a primitive integer vector.
inline Vec primitive(const Vec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, x.den());
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x.num() * (l / x.den()));
  if (g == 0) return v;
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i].num() * (l / v[i].den()) / g);
  return r;
}

inline Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline Vec append(const Vec& a, const Rat& x) {
  Vec r = a;
  r.push_back(x);
  return r;
}

inline Vec drop_last(const Vec& a) { return Vec(a.begin(), a.end() - 1); }

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace divpoly

template <>
struct std::hash<divpoly::Rat> {
  std::size_t operator()(const divpoly::Rat& r) const noexcept {
    return std::hash<std::string>()(r.str());
  }
};
