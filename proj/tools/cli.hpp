// Command dispatch for the divpoly command-line tool, kept separate from argument parsing so it can be tested.
#pragma once

#include "divpoly/divpoly.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace divpoly::cli {

using io::json;

enum Exit : int { kOk = 0, kNegative = 1, kError = 2, kUnknown = 3 };

struct Request {
  std::string command;
  std::vector<std::string> inputs;
  std::string out;              // empty: the caller prints the output
  std::string format = "json";  // json | svg
  int genus_override = -1;
  long long alpha_cap = 0;
  std::vector<long long> hilbert_k;
  std::string target = "divpoly";  // recover: divpoly | sf
};

struct Result {
  int code = kOk;
  std::string output;   // document (JSON or SVG)
  std::string message;  // diagnostics for stderr
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"validate", "dualize", "fansy",     "invariants", "cone",
                                          "recover",  "generators", "normality", "downgrade",  "render"};
  return c;
}

inline std::string verdict_word(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}
inline int verdict_exit(Verdict v) { return v == Verdict::Yes ? kOk : v == Verdict::No ? kNegative : kUnknown; }

namespace detail {

inline std::string point_str(const Vec& v) {
  if (v.size() == 1) return v[0].str();
  return to_string(v);
}

inline json poly_coeffs(const UniPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(io::entry(c));
  return a;
}

inline json weights(const std::set<Vec>& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back(io::to_json(w));
  return a;
}

/// The coefficient data printed for the cone over the running example, which is not proper.
inline PolyhedralDivisor printed_example() {
  Curve c = Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}});
  Matrix r{make_vec({-1, 2}), make_vec({1, 2})};
  Polyhedron h = Polyhedron::from_generators({Vec{Rat(-1, 2), Rat(0)}}, r, {}, 2);
  return PolyhedralDivisor(c, Cone::from_rays(r, 2),
                           {{"0", Polyhedron::from_generators({make_vec({-1, 2}), make_vec({0, 1}), make_vec({1, 2})}, r, {}, 2)},
                            {"inf", h},
                            {"1", h}});
}

inline const char* kPrintedExampleNote =
    "known inconsistency: this is the vertex data printed for the cone over the running example. Its degree "
    "polyhedron has the vertex (-2,2) outside the tail cone, so it is not proper. The vertices (0,2),(1,1),(2,2) "
    "at the point 0 are the epigraph of -h_0 and reproduce every other value of the example.";

inline DivisorialPolytope as_divpoly(const io::Object& o, const char* cmd) {
  if (auto p = std::get_if<DivisorialPolytope>(&o)) return *p;
  if (auto h = std::get_if<SupportFunction>(&o)) return dualize_h(*h);
  if (auto d = std::get_if<PolyhedralDivisor>(&o)) return recover_divpoly(*d);
  throw std::invalid_argument(std::string(cmd) + ": expected a divisorial polytope, support function or cone divisor");
}

inline SupportFunction as_sf(const io::Object& o, const char* cmd) {
  if (auto h = std::get_if<SupportFunction>(&o)) return *h;
  if (auto p = std::get_if<DivisorialPolytope>(&o)) return dualize_psi(*p).h;
  if (auto d = std::get_if<PolyhedralDivisor>(&o)) return recover(*d).h;
  throw std::invalid_argument(std::string(cmd) + ": expected a support function, divisorial polytope or cone divisor");
}

inline PolyhedralDivisor as_cone(const io::Object& o, const char* cmd) {
  if (auto d = std::get_if<PolyhedralDivisor>(&o)) return *d;
  return cone_divisor(as_sf(o, cmd));
}

inline Result validate_cmd(const io::Object& o) {
  Result r;
  json j;
  Verdict v = Verdict::Yes;
  if (auto p = std::get_if<DivisorialPolytope>(&o)) {
    ValidationReport rep = validate(*p);
    v = rep.verdict;
    j = {{"type", "divpoly"}, {"failures", rep.failures}, {"notes", rep.notes}};
  } else if (auto h = std::get_if<SupportFunction>(&o)) {
    SupportReport rep = validate(*h);
    FansyReport fr = validate(h->base());
    v = rep.verdict && fr.verdict;
    j = {{"type", "sf"}, {"failures", rep.failures}, {"base_verdict", verdict_word(fr.verdict)}};
    if (v == Verdict::Yes) {
      Verdict c = is_cartier(*h);
      j["cartier"] = verdict_word(c);
      v = v && c;
      if (c != Verdict::No) {
        AmpleReport a = is_ample(*h);
        j["ample"] = verdict_word(a.verdict);
        j["ample_failures"] = a.failures;
      }
    }
  } else if (auto x = std::get_if<MarkedFansyDivisor>(&o)) {
    FansyReport rep = validate(*x);
    v = rep.verdict;
    json conds = json::array();
    for (const auto& c : rep.conditions) conds.push_back({{"condition", c.condition}, {"verdict", verdict_word(c.verdict)}, {"witnesses", c.witnesses}});
    j = {{"type", "fansy"}, {"conditions", conds}};
  } else {
    const auto& d = std::get<PolyhedralDivisor>(o);
    ProperReport rep = is_proper(d);
    v = rep.verdict;
    j = {{"type", "pdiv"}, {"proper", verdict_word(rep.verdict)}, {"reason", rep.reason}};
    if (rep.witness) j["witness"] = io::to_json(*rep.witness);
    j["complete_locus"] = locus(d).complete();
    if (d == printed_example()) {
      j["note"] = kPrintedExampleNote;
      r.message = std::string("note: ") + kPrintedExampleNote;
    }
  }
  j["verdict"] = verdict_word(v);
  r.code = verdict_exit(v);
  r.output = j.dump(2) + "\n";
  return r;
}

inline Result invariants_cmd(const io::Object& o, const Request& req) {
  DivisorialPolytope psi = as_divpoly(o, "invariants");
  require_valid(psi, "invariants");
  json j;
  j["degree"] = degree_number(psi).str();
  HilbertResult hp = hilbert_polynomial(psi);
  j["hilbert"] = poly_coeffs(hp.poly);
  if (!hp.exact) {
    j["hilbert_exact"] = false;
    j["hilbert_lower"] = poly_coeffs(hp.lower);
  }
  SmoothnessReport sr = is_smooth(psi);
  if (sr.verdict == Verdict::Unknown) j["smooth"] = "unknown";
  else j["smooth"] = sr.verdict == Verdict::Yes;
  json w = json::array();
  for (const auto& s : sr.witnesses) w.push_back(json::array({s.point, point_str(s.v)}));
  j["witnesses"] = w;
  if (!req.hilbert_k.empty()) {
    json t = json::array();
    for (long long k : req.hilbert_k) {
      json row{{"k", k}, {"value", io::scalar(hp.poly(Rat(k)))}};
      if (!hp.exact) row["lower"] = io::scalar(hp.lower(Rat(k)));
      t.push_back(row);
    }
    j["hilbert_table"] = t;
  }
  Result r;
  r.output = j.dump(2) + "\n";
  r.code = sr.verdict == Verdict::Unknown || !hp.exact ? kUnknown : kOk;
  return r;
}

inline json generator_json(const GeneratorReport& g) {
  json alphas = json::array();
  for (const auto& [u, a] : g.alphas) alphas.push_back({{"weight", io::to_json(u)}, {"alpha", a}});
  json gens = json::array();
  for (const auto& [u, s] : g.generators) gens.push_back({{"weight", io::to_json(u)}, {"sections", s}});
  json j{{"weights", weights(g.g_all)}, {"alphas", alphas}, {"c", g.c}, {"g_min", weights(g.g_min)}, {"generators", gens},
         {"generator_count", g.generator_count()}, {"normality", verdict_word(g.normality)}};
  json fan = json::array();
  for (const auto& c : g.sigma_fan.maximal_cones()) fan.push_back(io::to_json(c));
  j["sigma_fan"] = fan;
  return j;
}

inline Result downgrade_cmd(const json& j) {
  std::size_t n = io::read_rank(j, "$");
  Polyhedron delta = io::read_polyhedron(io::detail::at(j, "polytope", "$"), "$.polytope", n);
  Vec f = io::read_vec(io::detail::at(j, "f", "$"), "$.f", n);
  Matrix g = io::read_matrix(io::detail::at(j, "g", "$"), "$.g", n);
  Matrix s = io::read_matrix(io::detail::at(j, "s", "$"), "$.s", n == 0 ? 0 : n - 1);
  Result r;
  r.output = io::to_json(toric_downgrade(delta, f, g, s)).dump(2) + "\n";
  return r;
}

inline Result dispatch(const Request& req, const json& doc) {
  const std::string& cmd = req.command;
  if (cmd == "downgrade") return downgrade_cmd(doc);
  io::ReadOptions opt;
  opt.genus_override = req.genus_override;
  io::Object o = io::read_object(doc, opt);
  Result r;
  auto emit = [&](const json& j) { r.output = j.dump(2) + "\n"; };
  if (cmd == "validate") return validate_cmd(o);
  if (cmd == "invariants") return invariants_cmd(o, req);
  if (cmd == "dualize") {
    if (auto p = std::get_if<DivisorialPolytope>(&o)) emit(io::to_json(dualize_psi(*p).h));
    else if (auto h = std::get_if<SupportFunction>(&o)) emit(io::to_json(dualize_h(*h)));
    else throw std::invalid_argument("dualize: expected a divisorial polytope or a support function");
  } else if (cmd == "fansy") {
    if (auto x = std::get_if<MarkedFansyDivisor>(&o)) {
      DivisorialFan f = to_divisorial_fan(*x);
      json gens = json::array(), mem = json::array();
      for (const auto& d : f.generators) gens.push_back(io::to_json(d));
      for (const auto& d : f.members) mem.push_back(io::to_json(d));
      emit({{"generators", gens}, {"members", mem}});
    } else {
      emit(io::to_json(as_sf(o, "fansy").base()));
    }
  } else if (cmd == "cone") {
    emit(io::to_json(as_cone(o, "cone")));
  } else if (cmd == "recover") {
    auto d = std::get_if<PolyhedralDivisor>(&o);
    if (!d) throw std::invalid_argument("recover: expected a polyhedral divisor");
    if (req.target == "sf") emit(io::to_json(recover(*d).h));
    else if (req.target == "divpoly") emit(io::to_json(recover_divpoly(*d)));
    else throw std::invalid_argument("recover: --target must be divpoly or sf");
  } else if (cmd == "generators") {
    GeneratorReport g = generators(as_cone(o, "generators"), req.alpha_cap);
    emit(generator_json(g));
    r.code = g.normality == Verdict::Unknown ? kUnknown : kOk;
  } else if (cmd == "normality") {
    SupportFunction h = as_sf(o, "normality");
    json j;
    if (!h.curve().is_p1()) {
      j = {{"normality", "unknown"}, {"g_min", json::array()}};
      r.code = kUnknown;
    } else {
      if (is_ample(h).verdict != Verdict::Yes) throw std::invalid_argument("normality: support function is not ample");
      GeneratorReport g = generators(cone_divisor(h), req.alpha_cap);
      j = {{"normality", verdict_word(g.normality)}, {"g_min", weights(g.g_min)}};
      r.code = verdict_exit(g.normality);
    }
    emit(j);
  } else if (cmd == "render") {
    if (req.format != "svg") throw std::invalid_argument("render: use --format svg");
    if (auto p = std::get_if<DivisorialPolytope>(&o)) r.output = svg::render(*p);
    else if (auto h = std::get_if<SupportFunction>(&o)) r.output = svg::render(*h);
    else if (auto x = std::get_if<MarkedFansyDivisor>(&o)) r.output = svg::render(*x);
    else throw std::invalid_argument("render: polyhedral divisors are not drawn");
  } else {
    throw std::invalid_argument("unknown command '" + cmd + "'");
  }
  return r;
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Writes through a temporary file in the same directory, then renames.
inline void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

/// Runs a command on in-memory documents; errors become exit code 2 with a message.
inline Result run_documents(const Request& req, const std::vector<std::string>& texts) {
  Result r;
  try {
    if (texts.size() != 1) throw std::invalid_argument(req.command + ": expected exactly one input document");
    if (req.format != "json" && req.format != "svg") throw std::invalid_argument("--format must be json or svg");
    if (req.format == "svg" && req.command != "render") throw std::invalid_argument("--format svg is only available for render");
    return detail::dispatch(req, io::parse_text(texts.front()));
  } catch (const io::ParseError& e) {
    r.message = std::string("parse error: ") + e.what();
  } catch (const std::exception& e) {
    r.message = std::string("error: ") + e.what();
  }
  r.code = kError;
  r.output.clear();
  return r;
}

/// Reads the inputs, runs the command and writes --out when given.
inline Result run(const Request& req) {
  std::vector<std::string> texts;
  try {
    for (const auto& p : req.inputs) texts.push_back(read_file(p));
  } catch (const std::exception& e) {
    return {kError, "", std::string("error: ") + e.what()};
  }
  Result r = run_documents(req, texts);
  if (r.code != kError && !req.out.empty()) {
    try {
      write_atomic(req.out, r.output);
      r.output.clear();
    } catch (const std::exception& e) {
      return {kError, "", std::string("error: ") + e.what()};
    }
  }
  return r;
}

}  // namespace divpoly::cli
