// The running example: a rank-one divisorial polytope on P^1 with marked
// points 0, inf, 1, and the objects derived from it, written out by hand.
#pragma once

#include "divpoly/divisorial_polytope.hpp"
#include "divpoly/pdiv.hpp"
#include "divpoly/support_function.hpp"

namespace fixture {

using namespace divpoly;

inline Matrix M(std::initializer_list<std::initializer_list<long long>> rows) {
  Matrix m;
  for (auto r : rows) m.push_back(make_vec(r));
  return m;
}
inline Vec V(std::initializer_list<Rat> xs) { return Vec(xs); }
inline Polyhedron poly(const Matrix& pts, const Matrix& rays = {}) {
  return Polyhedron::from_generators(pts, rays, {}, pts.front().size());
}

inline Curve p1() { return Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}}); }

inline Cone sigma() { return Cone::from_rays(M({{-1, 2}, {1, 2}}), 2); }

/// Cone divisor of the running example.
inline PolyhedralDivisor cone_divisor() {
  Matrix r = M({{-1, 2}, {1, 2}});
  return PolyhedralDivisor(p1(), sigma(),
                           {{"0", poly(M({{0, 2}, {1, 1}, {2, 2}}), r)},
                            {"inf", poly({V({Rat(-1, 2), 0})}, r)},
                            {"1", poly({V({Rat(-1, 2), 0})}, r)}});
}

/// The vertex data exactly as printed in the source example (not proper).
inline PolyhedralDivisor literal_cone_divisor() {
  Matrix r = M({{-1, 2}, {1, 2}});
  return PolyhedralDivisor(p1(), sigma(),
                           {{"0", poly(M({{-1, 2}, {0, 1}, {1, 2}}), r)},
                            {"inf", poly({V({Rat(-1, 2), 0})}, r)},
                            {"1", poly({V({Rat(-1, 2), 0})}, r)}});
}

/// The divisorial polytope of the running example on [-2, 2].
inline DivisorialPolytope ldp() {
  auto lin = [](Rat g, Rat c) { return Affine{Vec{g}, c}; };
  return DivisorialPolytope(p1(), poly(M({{-2}, {2}})),
                            {{"0", {lin(2, 2), lin(1, 1), lin(0, 2)}},
                             {"inf", {lin(Rat(-1, 2), 0)}},
                             {"1", {lin(Rat(-1, 2), 0)}}});
}

inline Polyhedron ray_from(const Rat& a, long long dir) { return Polyhedron::from_generators({Vec{a}}, {make_vec({dir})}, {}, 1); }
inline Polyhedron interval(const Rat& a, const Rat& b) { return Polyhedron::from_generators({Vec{a}, Vec{b}}, {}, {}, 1); }
inline Cone pos() { return Cone::from_rays(M({{1}}), 1); }
inline Cone neg() { return Cone::from_rays(M({{-1}}), 1); }
inline Fan line_fan() { return Fan::from_cones({pos(), neg()}, 1); }

/// Marked fansy divisor of the running example (both rays marked).
inline MarkedFansyDivisor ldp_fansy(std::vector<Cone> marks = {pos(), neg()}) {
  Rat h(-1, 2);
  return MarkedFansyDivisor(p1(), line_fan(),
                            {{"0", {ray_from(0, -1), interval(0, 1), interval(1, 2), ray_from(2, 1)}},
                             {"inf", {ray_from(h, -1), ray_from(h, 1)}},
                             {"1", {ray_from(h, -1), ray_from(h, 1)}}},
                            marks);
}

/// Support function of the running example.
inline SupportFunction ldp_h(std::vector<Cone> marks = {pos(), neg()}) {
  auto A = [](long long g, long long c) { return Affine{make_vec({g}), Rat(c)}; };
  Rat h(-1, 2);
  CellFunction f0{{ray_from(0, -1), A(2, -2)}, {interval(0, 1), A(1, -2)}, {interval(1, 2), A(-1, 0)}, {ray_from(2, 1), A(-2, 2)}};
  CellFunction finf{{ray_from(h, -1), A(2, 1)}, {ray_from(h, 1), A(-2, -1)}};
  return SupportFunction(ldp_fansy(marks), {{pos(), make_vec({-2})}, {neg(), make_vec({2})}},
                         {{"0", f0}, {"inf", finf}, {"1", finf}});
}

}  // namespace fixture
