// JSON encoding of the library's objects. Readers report the JSON path of the first problem.
#pragma once

#include "divpoly/cone_algebra.hpp"
#include "divpoly/divisorial_polytope.hpp"
#include "divpoly/fansy.hpp"
#include "divpoly/pdiv.hpp"
#include "divpoly/support_function.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <variant>

namespace divpoly::io {

using json = nlohmann::json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- writing

/// Standalone rationals are strings; vector entries are integers when they fit.
inline json scalar(const Rat& r) { return r.str(); }
inline json entry(const Rat& r) {
  if (r.is_integer() && r.num() <= BigInt(INT64_MAX) && r.num() >= BigInt(INT64_MIN)) return r.to_ll();
  return r.str();
}
inline json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(entry(x));
  return a;
}
inline json to_json(const Matrix& m) {
  json a = json::array();
  for (const auto& v : m) a.push_back(to_json(v));
  return a;
}
inline json to_json(const Polyhedron& p) {
  if (p.is_empty()) return {{"empty", true}};
  json j{{"vertices", to_json(p.vertices())}, {"rays", to_json(p.rays())}};
  if (!p.lineality().empty()) j["lineality"] = to_json(p.lineality());
  return j;
}
inline json to_json(const Cone& c) { return {{"rays", to_json(c.rays())}, {"lineality", to_json(c.lineality())}}; }
inline json to_json(const Fan& f) {
  json cones = json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(to_json(c));
  return {{"cones", cones}};
}
inline json to_json(const Curve& c) {
  json pts = json::array();
  for (const auto& p : c.points()) {
    if (c.is_p1()) pts.push_back({{"label", p.label}, {"coord", p.at_infinity ? json("inf") : scalar(*p.coord)}});
    else pts.push_back({{"label", p.label}});
  }
  if (c.is_p1()) return {{"kind", "P1"}, {"points", pts}};
  return {{"kind", "abstract"}, {"genus", c.genus()}, {"points", pts}};
}
inline json to_json(const QDivisor& d) {
  json m = json::object();
  for (const auto& [k, v] : d.coeffs()) m[k] = scalar(v);
  return {{"coeffs", m}};
}
inline json to_json(const PolyhedralDivisor& d) {
  json coeffs = json::array();
  for (const auto& [label, p] : d.coeffs()) coeffs.push_back({{"point", label}, {"poly", to_json(p)}});
  return {{"type", "pdiv"}, {"rank", d.ambient_dim()}, {"curve", to_json(d.curve())}, {"tail", to_json(d.tail())}, {"coeffs", coeffs}};
}
inline json to_json(const MarkedFansyDivisor& x) {
  json slices = json::array();
  for (const auto& [label, pc] : x.slices()) {
    json cells = json::array();
    for (const auto& c : pc.maximal_cells()) cells.push_back(to_json(c));
    slices.push_back({{"point", label}, {"cells", cells}});
  }
  json marks = json::array();
  for (const auto& m : x.marks()) marks.push_back(to_json(m));
  return {{"type", "fansy"}, {"rank", x.ambient_dim()}, {"curve", to_json(x.curve())}, {"tailfan", to_json(x.tailfan())},
          {"slices", slices}, {"marks", marks}};
}
inline json to_json(const Affine& a) { return {{"gradient", to_json(a.gradient)}, {"constant", scalar(a.constant)}}; }
inline json to_json(const SupportFunction& h) {
  json lin = json::array();
  for (const auto& [c, g] : h.linear()) lin.push_back({{"cone", to_json(c)}, {"gradient", to_json(g)}});
  json pieces = json::array();
  for (const auto& [label, f] : h.pieces()) {
    json cells = json::array();
    for (const auto& [c, a] : f) cells.push_back({{"cell", to_json(c)}, {"gradient", to_json(a.gradient)}, {"constant", scalar(a.constant)}});
    pieces.push_back({{"point", label}, {"cells", cells}});
  }
  json base = to_json(h.base());
  base.erase("type");
  return {{"type", "sf"}, {"rank", h.ambient_dim()}, {"base", base}, {"linear", lin}, {"pieces", pieces}};
}
inline json to_json(const DivisorialPolytope& psi) {
  json pieces = json::array();
  for (const auto& [label, p] : psi.pieces()) {
    json affs = json::array();
    for (const auto& a : p) affs.push_back(to_json(a));
    pieces.push_back({{"point", label}, {"affines", affs}});
  }
  return {{"type", "divpoly"}, {"rank", psi.rank()}, {"curve", to_json(psi.curve())}, {"box", to_json(psi.box())}, {"pieces", pieces}};
}

// ---- reading

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) { throw ParseError(path + ": " + msg); }

inline const json& at(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing key '" + key + "'");
  return *it;
}
inline const json& array_at(const json& j, const std::string& key, const std::string& path) {
  const json& a = at(j, key, path);
  if (!a.is_array()) fail(path + "." + key, "expected an array");
  return a;
}
inline std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

/// Wraps domain errors raised while assembling an object with the path of that object.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  } catch (const std::domain_error& e) {
    fail(path, e.what());
  }
}

inline std::size_t find_rank(const json& j) {
  if (j.is_object()) {
    for (const char* k : {"vertices", "rays", "lineality", "gradient"}) {
      auto it = j.find(k);
      if (it == j.end() || !it->is_array() || it->empty()) continue;
      if (std::string(k) == "gradient") return it->size();
      if ((*it)[0].is_array()) return (*it)[0].size();
    }
    for (const auto& [k, v] : j.items()) {
      if (std::size_t r = find_rank(v)) return r;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (std::size_t r = find_rank(v)) return r;
    }
  }
  return 0;
}

}  // namespace detail

inline Rat read_rat(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rat::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      detail::fail(path, e.what());
    }
  }
  detail::fail(path, "expected an integer or a \"p/q\" string");
}

inline Vec read_vec(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) detail::fail(path, "expected an array");
  if (j.size() != dim) detail::fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(j.size()));
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rat(j[i], detail::idx(path, i)));
  return v;
}

inline Matrix read_matrix(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_array()) detail::fail(path, "expected an array");
  Matrix m;
  for (std::size_t i = 0; i < j.size(); ++i) m.push_back(read_vec(j[i], detail::idx(path, i), dim));
  return m;
}

inline Matrix read_optional_matrix(const json& j, const char* key, const std::string& path, std::size_t dim) {
  auto it = j.find(key);
  return it == j.end() ? Matrix{} : read_matrix(*it, path + "." + key, dim);
}

inline Polyhedron read_polyhedron(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_object()) detail::fail(path, "expected an object");
  auto e = j.find("empty");
  if (e != j.end() && e->is_boolean() && e->get<bool>()) return Polyhedron::empty(dim);
  Matrix v = read_matrix(detail::at(j, "vertices", path), path + ".vertices", dim);
  Matrix r = read_optional_matrix(j, "rays", path, dim);
  Matrix l = read_optional_matrix(j, "lineality", path, dim);
  if (v.empty()) detail::fail(path, "a nonempty polyhedron needs at least one vertex");
  return detail::guarded(path, [&] { return Polyhedron::from_generators(v, r, l, dim); });
}

inline Cone read_cone(const json& j, const std::string& path, std::size_t dim) {
  if (!j.is_object()) detail::fail(path, "expected an object");
  Matrix r = read_optional_matrix(j, "rays", path, dim);
  Matrix l = read_optional_matrix(j, "lineality", path, dim);
  return detail::guarded(path, [&] { return Cone::from_rays(r, l, dim); });
}

inline Fan read_fan(const json& j, const std::string& path, std::size_t dim) {
  const json& a = detail::array_at(j, "cones", path);
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < a.size(); ++i) cones.push_back(read_cone(a[i], detail::idx(path + ".cones", i), dim));
  return detail::guarded(path, [&] { return Fan::from_cones(cones, dim); });
}

inline std::string read_label(const json& j, const std::string& path) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    const json& l = detail::at(j, "label", path);
    if (l.is_string()) return l.get<std::string>();
  }
  detail::fail(path, "expected a point label");
}

/// `genus_override` replaces the genus of an abstract curve when nonnegative.
inline Curve read_curve(const json& j, const std::string& path, int genus_override = -1) {
  const json& kind = detail::at(j, "kind", path);
  const json& pts = detail::array_at(j, "points", path);
  if (kind == "P1") {
    if (genus_override > 0) detail::fail(path, "genus override on the projective line");
    std::vector<std::pair<std::string, std::optional<Rat>>> ps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::string p = detail::idx(path + ".points", i);
      std::string label = read_label(pts[i], p);
      const json& c = detail::at(pts[i], "coord", p);
      if (c == "inf") ps.emplace_back(label, std::nullopt);
      else ps.emplace_back(label, read_rat(c, p + ".coord"));
    }
    return detail::guarded(path, [&] { return Curve::projective_line(ps); });
  }
  if (kind == "abstract") {
    const json& g = detail::at(j, "genus", path);
    if (!g.is_number_integer()) detail::fail(path + ".genus", "expected an integer");
    int genus = genus_override >= 0 ? genus_override : g.get<int>();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < pts.size(); ++i) labels.push_back(read_label(pts[i], detail::idx(path + ".points", i)));
    return detail::guarded(path, [&] { return Curve::abstract(genus, labels); });
  }
  detail::fail(path + ".kind", "expected \"P1\" or \"abstract\"");
}

inline QDivisor read_qdivisor(const json& j, const std::string& path) {
  const json& m = detail::at(j, "coeffs", path);
  if (!m.is_object()) detail::fail(path + ".coeffs", "expected an object");
  QDivisor d;
  for (const auto& [k, v] : m.items()) d.set(k, read_rat(v, path + ".coeffs." + k));
  return d;
}

struct ReadOptions {
  int genus_override = -1;
};

inline std::size_t read_rank(const json& j, const std::string& path) {
  auto it = j.find("rank");
  if (it != j.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() == 0) detail::fail(path + ".rank", "expected a positive integer");
    return it->get<std::size_t>();
  }
  std::size_t r = detail::find_rank(j);
  if (r == 0) detail::fail(path, "cannot infer the lattice rank; add a \"rank\" field");
  return r;
}

inline PolyhedralDivisor read_pdiv(const json& j, const std::string& path = "$", const ReadOptions& o = {}) {
  const std::size_t n = read_rank(j, path);
  Curve c = read_curve(detail::at(j, "curve", path), path + ".curve", o.genus_override);
  Cone tail = read_cone(detail::at(j, "tail", path), path + ".tail", n);
  std::map<std::string, Polyhedron> coeffs;
  const json& a = detail::array_at(j, "coeffs", path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = detail::idx(path + ".coeffs", i);
    std::string label = read_label(detail::at(a[i], "point", p), p + ".point");
    coeffs.emplace(label, read_polyhedron(detail::at(a[i], "poly", p), p + ".poly", n));
  }
  return detail::guarded(path, [&] { return PolyhedralDivisor(c, tail, coeffs); });
}

inline MarkedFansyDivisor read_fansy(const json& j, const std::string& path = "$", const ReadOptions& o = {}) {
  const std::size_t n = read_rank(j, path);
  Curve c = read_curve(detail::at(j, "curve", path), path + ".curve", o.genus_override);
  Fan tf = read_fan(detail::at(j, "tailfan", path), path + ".tailfan", n);
  std::map<std::string, std::vector<Polyhedron>> slices;
  const json& a = detail::array_at(j, "slices", path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = detail::idx(path + ".slices", i);
    std::string label = read_label(detail::at(a[i], "point", p), p + ".point");
    const json& cells = detail::array_at(a[i], "cells", p);
    for (std::size_t k = 0; k < cells.size(); ++k) slices[label].push_back(read_polyhedron(cells[k], detail::idx(p + ".cells", k), n));
  }
  std::vector<Cone> marks;
  auto it = j.find("marks");
  if (it != j.end()) {
    if (!it->is_array()) detail::fail(path + ".marks", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) marks.push_back(read_cone((*it)[i], detail::idx(path + ".marks", i), n));
  }
  return detail::guarded(path, [&] { return MarkedFansyDivisor(c, tf, slices, marks); });
}

inline SupportFunction read_sf(const json& j, const std::string& path = "$", const ReadOptions& o = {}) {
  const std::size_t n = read_rank(j, path);
  json bj = detail::at(j, "base", path);
  if (bj.is_object() && !bj.contains("rank")) bj["rank"] = n;
  MarkedFansyDivisor base = read_fansy(bj, path + ".base", o);
  std::map<Cone, Vec> lin;
  const json& la = detail::array_at(j, "linear", path);
  for (std::size_t i = 0; i < la.size(); ++i) {
    std::string p = detail::idx(path + ".linear", i);
    lin.emplace(read_cone(detail::at(la[i], "cone", p), p + ".cone", n), read_vec(detail::at(la[i], "gradient", p), p + ".gradient", n));
  }
  std::map<std::string, CellFunction> pieces;
  const json& pa = detail::array_at(j, "pieces", path);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    std::string p = detail::idx(path + ".pieces", i);
    std::string label = read_label(detail::at(pa[i], "point", p), p + ".point");
    const json& cells = detail::array_at(pa[i], "cells", p);
    CellFunction f;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      std::string q = detail::idx(p + ".cells", k);
      Polyhedron cell = read_polyhedron(detail::at(cells[k], "cell", q), q + ".cell", n);
      f.emplace(cell, Affine{read_vec(detail::at(cells[k], "gradient", q), q + ".gradient", n),
                             read_rat(detail::at(cells[k], "constant", q), q + ".constant")});
    }
    pieces.emplace(label, f);
  }
  return detail::guarded(path, [&] { return SupportFunction(base, lin, pieces); });
}

inline DivisorialPolytope read_divpoly(const json& j, const std::string& path = "$", const ReadOptions& o = {}) {
  const std::size_t n = read_rank(j, path);
  Curve c = read_curve(detail::at(j, "curve", path), path + ".curve", o.genus_override);
  Polyhedron box = read_polyhedron(detail::at(j, "box", path), path + ".box", n);
  std::map<std::string, Piece> pieces;
  const json& a = detail::array_at(j, "pieces", path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = detail::idx(path + ".pieces", i);
    std::string label = read_label(detail::at(a[i], "point", p), p + ".point");
    const json& affs = detail::array_at(a[i], "affines", p);
    Piece pc;
    for (std::size_t k = 0; k < affs.size(); ++k) {
      std::string q = detail::idx(p + ".affines", k);
      pc.push_back({read_vec(detail::at(affs[k], "gradient", q), q + ".gradient", n), read_rat(detail::at(affs[k], "constant", q), q + ".constant")});
    }
    if (pc.empty()) detail::fail(p + ".affines", "a piece needs at least one affine function");
    pieces.emplace(label, pc);
  }
  return detail::guarded(path, [&] { return DivisorialPolytope(c, box, pieces); });
}

using Object = std::variant<DivisorialPolytope, SupportFunction, MarkedFansyDivisor, PolyhedralDivisor>;

/// "type" when present, otherwise from the distinguishing key.
inline std::string detect_type(const json& j) {
  if (!j.is_object()) detail::fail("$", "expected an object");
  auto t = j.find("type");
  if (t != j.end()) {
    if (!t->is_string()) detail::fail("$.type", "expected a string");
    std::string s = t->get<std::string>();
    if (s != "divpoly" && s != "sf" && s != "fansy" && s != "pdiv") detail::fail("$.type", "unknown type '" + s + "'");
    return s;
  }
  if (j.contains("box")) return "divpoly";
  if (j.contains("base")) return "sf";
  if (j.contains("tailfan")) return "fansy";
  if (j.contains("tail")) return "pdiv";
  detail::fail("$", "cannot determine the object type; add a \"type\" field");
}

inline Object read_object(const json& j, const ReadOptions& o = {}) {
  std::string t = detect_type(j);
  if (t == "divpoly") return read_divpoly(j, "$", o);
  if (t == "sf") return read_sf(j, "$", o);
  if (t == "fansy") return read_fansy(j, "$", o);
  return read_pdiv(j, "$", o);
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: malformed JSON: ") + e.what());
  }
}

}  // namespace divpoly::io
