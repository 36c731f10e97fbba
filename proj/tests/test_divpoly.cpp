#include "divpoly/divisorial_polytope.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace divpoly;
using fixture::M;
using fixture::poly;

namespace {

Piece aff(std::initializer_list<std::pair<Rat, Rat>> gc) {
  Piece p;
  for (const auto& [g, c] : gc) p.push_back({Vec{g}, c});
  return p;
}

Polyhedron seg(long long a, long long b) { return poly(M({{a}, {b}})); }

DivisorialPolytope ldp() { return fixture::ldp(); }

// direct sum over k*Box of 1 + deg floor((k Psi)(u)), with (k Psi)(u) = k Psi(u/k)
Rat direct_ehrhart(const DivisorialPolytope& psi, long long k) {
  Rat total;
  for (const auto& u : lattice_points(psi.box(), k)) {
    Vec w = Rat(1, k) * u;
    total += 1 + degree(floor_div(Rat(k) * psi(w)));
  }
  return total;
}

// brute-force sup-convolution value at u: max over u' in box_a, u'' = u - u' in box_b on a fine grid
Rat brute_sup(const DivisorialPolytope& a, const DivisorialPolytope& b, const std::string& l, const Rat& u, long long den) {
  std::optional<Rat> best;
  for (const auto& v : lattice_points(a.box(), den)) {
    Vec x = Rat(1, den) * v;
    Vec y{u - x[0]};
    if (!b.box().contains(y)) continue;
    Rat val = a.value(l, x) + b.value(l, y);
    if (!best || val > *best) best = val;
  }
  return *best;
}

}  // namespace

TEST(Construction, Canonical) {
  auto psi = ldp();
  EXPECT_EQ(psi.pieces().at("0"), aff({{0, 2}, {1, 1}, {2, 2}}));
  EXPECT_EQ(psi.pieces().at("inf"), aff({{Rat(-1, 2), 0}}));
  // redundant affines disappear, zero pieces are dropped
  DivisorialPolytope q(fixture::p1(), seg(-2, 2), {{"0", aff({{0, 2}, {1, 1}, {2, 2}, {0, 10}})}, {"1", aff({{0, 0}})}});
  EXPECT_EQ(q.support(), std::vector<std::string>{"0"});
  EXPECT_THROW(DivisorialPolytope(fixture::p1(), seg(-2, 2), {{"x", aff({{0, 0}})}}), std::invalid_argument);
  EXPECT_THROW(DivisorialPolytope(fixture::p1(), poly({fixture::V({Rat(1, 2)})}), {}), std::invalid_argument);
}

TEST(Validate, Examples) {
  EXPECT_EQ(validate(ldp()).verdict, Verdict::Yes);
  auto base = ldp();
  DivisorialPolytope bad(fixture::p1(), seg(-2, 2),
                         {{"0", aff({{1, 2}, {0, 1}, {-1, 2}})}, {"inf", base.piece("inf")}, {"1", base.piece("1")}});
  ValidationReport r = validate(bad);
  EXPECT_EQ(r.verdict, Verdict::No);
  EXPECT_FALSE(r.failures.empty());
  DivisorialPolytope pt(fixture::p1(), poly(M({{0}})), {});
  EXPECT_EQ(validate(pt).verdict, Verdict::Yes);
  // non-integral graph vertex
  DivisorialPolytope frac(fixture::p1(), seg(0, 1), {{"0", aff({{Rat(1, 2), 1}})}});
  EXPECT_EQ(validate(frac).verdict, Verdict::No);
  // degree zero at a vertex, not principal in positive genus: undecided
  Curve ell = Curve::abstract(1, {"0", "inf", "1"});
  DivisorialPolytope g(ell, base.box(), base.pieces());
  EXPECT_EQ(validate(g).verdict, Verdict::Unknown);
}

TEST(Semigroup, ScaleAndAdd) {
  auto psi = ldp();
  auto s = scale(2, psi);
  EXPECT_EQ(s.box(), seg(-4, 4));
  EXPECT_EQ(s.pieces().at("0"), aff({{0, 4}, {1, 2}, {2, 4}}));
  EXPECT_EQ(add(psi, psi), s);
  DivisorialPolytope zero(psi.curve(), poly(M({{0}})), {});
  EXPECT_EQ(add(psi, zero), psi);
  // brute-force sup-convolution against a different summand
  DivisorialPolytope other(psi.curve(), seg(0, 1), {{"0", aff({{-1, 1}})}, {"inf", aff({{1, 0}})}});
  auto sum = add(psi, other);
  for (long long i = -8; i <= 12; ++i) {
    Rat u(i, 4);
    for (const auto& l : psi.curve().labels()) EXPECT_EQ(sum.value(l, {u}), brute_sup(psi, other, l, u, 4)) << l << " " << u.str();
  }
  EXPECT_THROW(add(psi, DivisorialPolytope(Curve::abstract(0, {"0"}), seg(0, 1), {})), std::invalid_argument);
}

TEST(DeltaPolytope, Examples) {
  auto psi = ldp();
  Polyhedron all = delta_polytope(psi, {"0", "inf", "1"});
  EXPECT_EQ(all, poly(M({{-2, 0}, {-1, 1}, {1, 1}, {2, 0}})));
  Polyhedron none = delta_polytope(psi, {});
  EXPECT_EQ(none, linear_image(all, M({{1, 0}, {0, -1}})));
  for (const auto& I : std::vector<std::set<std::string>>{{}, {"0"}, {"inf"}, {"1"}, {"0", "inf"}, {"0", "inf", "1"}}) {
    EXPECT_EQ(euclidean_volume(delta_polytope(psi, I)), Rat(3));
  }
}

TEST(TildeDelta, Examples) {
  auto psi = ldp();
  EXPECT_EQ(tilde_delta(psi, "0"), poly(M({{-2, -2}, {-1, 0}, {1, 2}, {2, 2}, {2, -2}})));
  EXPECT_EQ(tilde_delta(psi, "inf"), poly(M({{-2, 1}, {2, -1}, {-2, -1}})));
  DivisorialPolytope t(psi.curve(), seg(-1, 1), {});
  EXPECT_EQ(tilde_delta(t, "0"), poly(M({{-1, 0}, {1, 0}})));
  EXPECT_EQ(ehrhart(tilde_delta(psi, "0")), (UniPoly{1, 6, 11}));
  EXPECT_EQ(ehrhart(tilde_delta(psi, "inf")), (UniPoly{1, 4, 4}));
}

TEST(DegreeNumber, Examples) {
  EXPECT_EQ(degree_number(ldp()), Rat(6));
  EXPECT_EQ(degree_number(scale(2, ldp())), Rat(24));
  EXPECT_EQ(degree_number(DivisorialPolytope(fixture::p1(), poly(M({{0}})), {})), Rat(0));
}

TEST(Smoothness, Examples) {
  auto psi = ldp();
  EXPECT_EQ(smooth_at(psi, "0", {Rat(-1)}), Verdict::Yes);
  EXPECT_EQ(smooth_at(psi, "0", {Rat(1)}), Verdict::Yes);
  for (const auto& l : psi.curve().labels()) {
    EXPECT_EQ(smooth_at(psi, l, {Rat(2)}), Verdict::No) << l;
    EXPECT_EQ(smooth_at(psi, l, {Rat(-2)}), Verdict::No) << l;
  }
  EXPECT_THROW(smooth_at(psi, "0", {Rat(0)}), std::invalid_argument);
  SmoothnessReport r = is_smooth(psi);
  EXPECT_EQ(r.verdict, Verdict::No);
  std::vector<SmoothWitness> expect{{"P", {Rat(2)}}, {"P", {Rat(-2)}}};
  EXPECT_EQ(r.witnesses, expect);
  // toric downgrade of the unit square
  auto sq = toric_downgrade(poly(M({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), fixture::V({0, 1}), M({{1, 0}}), M({{1}, {0}}));
  EXPECT_EQ(is_smooth(sq).verdict, Verdict::Yes);
  EXPECT_EQ(is_smooth(DivisorialPolytope(fixture::p1(), poly(M({{0}})), {})).verdict, Verdict::Yes);
}

TEST(Smoothness, MatchesToricSmoothnessOfDowngrades) {
  // downgrades of lattice polygons: smooth polygon <-> smooth divisorial polytope
  struct Case {
    Matrix pts;
    bool smooth;
  };
  std::vector<Case> cases{{M({{0, 0}, {2, 0}, {0, 2}}), true},
                          {M({{0, 0}, {1, 0}, {0, 1}, {1, 2}}), true},
                          {M({{0, 0}, {2, 0}, {0, 1}}), false},
                          {M({{-1, 0}, {1, 0}, {0, 1}}), false},
                          {M({{0, 0}, {3, 0}, {1, 1}, {0, 1}}), true}};
  for (const auto& c : cases) {
    Polyhedron p = poly(c.pts);
    bool toric = true;
    for (const auto& v : p.vertices()) toric = toric && is_smooth_at_vertex(p, v);
    ASSERT_EQ(toric, c.smooth);
    auto d = toric_downgrade(p, fixture::V({0, 1}), M({{1, 0}}), M({{1}, {0}}));
    EXPECT_EQ(is_smooth(d).verdict, verdict(c.smooth)) << p.str();
    EXPECT_EQ(ehrhart_psi(d), ehrhart(p)) << p.str();
  }
}

TEST(Ehrhart, Examples) {
  auto psi = ldp();
  UniPoly e = ehrhart_psi(psi);
  EXPECT_EQ(e, (UniPoly{1, 2, 3}));
  for (long long k = 1; k <= 3; ++k) {
    EXPECT_EQ(e(Rat(k)), direct_ehrhart(psi, k)) << k;
    EXPECT_EQ(ehrhart_psi(scale(k, psi))(Rat(1)), e(Rat(k)));
  }
  DivisorialPolytope t(psi.curve(), seg(-1, 2), {});
  EXPECT_EQ(ehrhart_psi(t), ehrhart(seg(-1, 2)));
  // two nontrivial pieces: E_Psi is the Ehrhart polynomial of Delta(Psi, {P1})
  auto s = toric_downgrade(poly(M({{0, -1}, {1, 0}, {0, 1}})), fixture::V({0, 1}), M({{1, 0}}), M({{1}, {0}}));
  ASSERT_EQ(s.support().size(), 2u);
  EXPECT_EQ(ehrhart_psi(s), ehrhart(delta_polytope(s, {"0"})));
}

TEST(Hilbert, Examples) {
  auto psi = ldp();
  HilbertResult h = hilbert_polynomial(psi);
  EXPECT_TRUE(h.exact);
  EXPECT_EQ(h.poly, (UniPoly{1, 2, 3}));
  // cross-check against the cone divisor weight spaces
  auto d = fixture::cone_divisor();
  for (long long k = 1; k <= 2; ++k) {
    long long total = 0;
    for (long long j = -2 * k; j <= 2 * k; ++j) total += weight_module_dim(d, make_vec({j, k})).value();
    EXPECT_EQ(h.poly(Rat(k)), Rat(total));
  }
  Curve ell = Curve::abstract(1, {"0", "inf", "1"});
  // principality at the box vertices is undecided on the elliptic curve; use a degree-positive polytope there
  DivisorialPolytope g(ell, seg(-2, 2), {{"0", aff({{0, 3}, {1, 2}, {2, 3}})}, {"inf", psi.piece("inf")}, {"1", psi.piece("1")}});
  ASSERT_EQ(validate(g).verdict, Verdict::Yes);
  HilbertResult hg = hilbert_polynomial(g);
  EXPECT_TRUE(hg.exact);
  EXPECT_EQ(hg.poly, ehrhart_psi(g) - ehrhart(seg(-2, 2)));
  // in genus two the floor degrees 1 and 2 fall below 2g-1 = 3
  DivisorialPolytope g2(Curve::abstract(2, {"0", "inf", "1"}), g.box(), g.pieces());
  HilbertResult h2 = hilbert_polynomial(g2);
  EXPECT_FALSE(h2.exact);
  EXPECT_EQ(h2.poly, ehrhart_psi(g2));
  EXPECT_EQ(h2.lower, h2.poly - Rat(2) * ehrhart(seg(-2, 2)));
  // hypothesis holds when all floor degrees are at least one
  DivisorialPolytope big(ell, seg(-1, 1), {{"0", aff({{0, 2}})}});
  HilbertResult hb = hilbert_polynomial(big);
  EXPECT_TRUE(hb.exact);
  EXPECT_EQ(hb.poly, ehrhart_psi(big) - ehrhart(seg(-1, 1)));
  EXPECT_EQ(hilbert_polynomial(DivisorialPolytope(fixture::p1(), seg(0, 3), {})).poly, ehrhart(seg(0, 3)));
}

TEST(ToricDowngrade, Examples) {
  auto sq = toric_downgrade(poly(M({{0, 0}, {1, 0}, {0, 1}, {1, 1}})), fixture::V({0, 1}), M({{1, 0}}), M({{1}, {0}}));
  EXPECT_EQ(sq.box(), seg(0, 1));
  EXPECT_EQ(sq.piece("0"), aff({{0, 1}}));
  EXPECT_EQ(sq.piece("inf"), aff({{0, 0}}));
  auto s = toric_downgrade(poly(M({{0, 0}, {1, 1}})), fixture::V({0, 1}), M({{1, 0}}), M({{1}, {0}}));
  EXPECT_EQ(s.piece("0"), aff({{1, 0}}));
  EXPECT_EQ(s.piece("inf"), aff({{-1, 0}}));
  EXPECT_THROW(toric_downgrade(poly(M({{0, 0}})), fixture::V({1, 1}), M({{1, 0}}), M({{1}, {0}})), std::invalid_argument);
  EXPECT_THROW(toric_downgrade(poly(M({{0, 0}})), fixture::V({0, 1}), M({{1, 0}}), M({{2}, {0}})), std::invalid_argument);
}

TEST(Equivalence, Examples) {
  auto psi = ldp();
  EXPECT_TRUE(equivalent_rank1(psi, psi));
  DivisorialPolytope swapped(psi.curve(), psi.box(),
                             {{"0", psi.piece("0")}, {"inf", psi.piece("1")}, {"1", psi.piece("inf")}});
  EXPECT_TRUE(equivalent_rank1(psi, swapped));
  Piece p0 = psi.piece("0"), pinf = psi.piece("inf");
  for (auto& a : p0) a.gradient[0] -= 1;
  for (auto& a : pinf) a.gradient[0] += 1;
  DivisorialPolytope shifted(psi.curve(), psi.box(), {{"0", p0}, {"inf", pinf}, {"1", psi.piece("1")}});
  EXPECT_TRUE(equivalent_rank1(psi, shifted));
  EXPECT_FALSE(equivalent_rank1(psi, scale(2, psi)));
  // reflection u -> -u
  std::map<std::string, Piece> refl;
  for (const auto& [l, p] : psi.pieces()) {
    Piece q;
    for (const auto& a : p) q.push_back({Rat(-1) * a.gradient, a.constant});
    refl[l] = q;
  }
  EXPECT_TRUE(equivalent_rank1(psi, DivisorialPolytope(psi.curve(), psi.box(), refl)));
  // a non-integral shift is not allowed
  Piece half = psi.piece("0");
  for (auto& a : half) a.gradient[0] += Rat(1, 2);
  Piece halfm = psi.piece("inf");
  for (auto& a : halfm) a.gradient[0] -= Rat(1, 2);
  EXPECT_FALSE(equivalent_rank1(psi, DivisorialPolytope(psi.curve(), psi.box(), {{"0", half}, {"inf", halfm}, {"1", psi.piece("1")}})));
  // four points with incompatible cross ratio
  Curve c4 = Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}, {"2", Rat(2)}});
  Curve c4b = Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}, {"2", Rat(3)}});
  // kinked pieces cannot be absorbed by a principal shift, so all four points must match
  std::map<std::string, Piece> four{{"0", aff({{1, 0}, {0, 0}})}, {"inf", aff({{-1, 0}, {0, 0}})}, {"1", aff({{0, 1}})}, {"2", aff({{0, 1}})}};
  DivisorialPolytope f1(c4, seg(-1, 1), four), f2(c4b, seg(-1, 1), four);
  EXPECT_TRUE(equivalent_rank1(f1, f1));
  EXPECT_FALSE(equivalent_rank1(f1, f2));
  Curve c4c = Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}, {"2", Rat(-1)}});
  // z -> 1/z swaps 0 and inf and fixes 1 and -1
  DivisorialPolytope f3(c4c, seg(-1, 1), four);
  std::map<std::string, Piece> four_sw{{"0", four["inf"]}, {"inf", four["0"]}, {"1", four["1"]}, {"2", four["2"]}};
  EXPECT_TRUE(equivalent_rank1(f3, DivisorialPolytope(c4c, seg(-1, 1), four_sw)));
  EXPECT_FALSE(equivalent_rank1(f1, f3));
  EXPECT_THROW(equivalent_rank1(toric_downgrade(poly(M({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), fixture::V({0, 0, 1}),
                                                M({{1, 0, 0}, {0, 1, 0}}), M({{1, 0}, {0, 1}, {0, 0}})),
                                psi),
               std::invalid_argument);
}
