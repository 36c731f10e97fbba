#include "divpoly/cone_algebra.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_divpoly.hpp"

#include <gtest/gtest.h>

using namespace divpoly;
using fixture::M;

namespace {

Vec W(long long u, long long k) { return make_vec({u, k}); }

Curve four_points() {
  return Curve::projective_line({{"0", Rat(0)}, {"inf", std::nullopt}, {"1", Rat(1)}, {"2", Rat(2)}});
}

/// Box [0,2], u/2 at three points and -u at the fourth: weight (3,2) is not generated in grading one.
DivisorialPolytope non_normal() {
  Affine half{Vec{Rat(1, 2)}, Rat(0)}, neg{make_vec({-1}), Rat(0)};
  return DivisorialPolytope(four_points(), fixture::interval(0, 2), {{"0", {half}}, {"inf", {half}}, {"1", {half}}, {"2", {neg}}});
}

}  // namespace

TEST(ConeAlgebra, ConeDivisor) {
  PolyhedralDivisor d = cone_divisor(fixture::ldp_h());
  EXPECT_EQ(d, fixture::cone_divisor());
  EXPECT_EQ(d.tail(), fixture::sigma());
  EXPECT_EQ(is_proper(d).verdict, Verdict::Yes);
  EXPECT_EQ(d.coefficient("inf").vertices(), (Matrix{fixture::V({Rat(-1, 2), 0})}));
  MarkedFansyDivisor trivial(fixture::p1(), fixture::line_fan(), {}, {});
  SupportFunction zero(trivial, {{fixture::pos(), make_vec({0})}, {fixture::neg(), make_vec({0})}}, {});
  EXPECT_THROW(cone_divisor(zero), std::invalid_argument);
}

TEST(ConeAlgebra, Recover) {
  PolyhedralDivisor d = fixture::cone_divisor();
  Dualized r = recover(d);
  EXPECT_EQ(r.base, fixture::ldp_fansy());
  EXPECT_EQ(r.h, fixture::ldp_h());
  EXPECT_EQ(recover_divpoly(d), fixture::ldp());
  // a lattice translate of the tail at one point: trivial slices, unmarked cones
  Matrix rays = M({{-1, 2}, {1, 2}});
  PolyhedralDivisor t(fixture::p1(), fixture::sigma(), {{"0", fixture::poly(M({{0, 1}}), rays)}});
  Dualized rt = recover(t);
  EXPECT_TRUE(rt.base.slices().empty());
  EXPECT_TRUE(rt.base.marks().empty());
  EXPECT_EQ(rt.h.value("0", make_vec({3})), Rat(-7));
  // fiber unbounded below
  Cone down = Cone::from_rays(M({{1, 0}, {0, -1}}), 2);
  PolyhedralDivisor u(fixture::p1(), down, {{"0", fixture::poly(M({{0, 0}}), M({{1, 0}, {0, -1}}))}});
  EXPECT_THROW(recover(u), std::invalid_argument);
  EXPECT_THROW(recover_divpoly(u), std::invalid_argument);
  EXPECT_THROW(recover(fixture::literal_cone_divisor()), std::invalid_argument);
}

TEST(ConeAlgebra, RefinementSigma) {
  PolyhedralDivisor d = fixture::cone_divisor();
  Fan f = refinement_sigma(d);
  std::vector<Cone> maxc = f.maximal_cones();
  ASSERT_EQ(maxc.size(), 3u);
  EXPECT_TRUE(f.has_cone(Cone::from_rays(M({{-1, 1}}), 2)));
  EXPECT_TRUE(f.has_cone(Cone::from_rays(M({{1, 1}}), 2)));
  EXPECT_TRUE(f.has_cone(Cone::from_rays(M({{-1, 1}, {1, 1}}), 2)));
  // D is linear on each cone: additivity on lattice points of small height
  for (const auto& tau : maxc) {
    std::vector<Vec> pts;
    oracle::box_points(2, 4, [&](const Vec& x) {
      if (tau.contains(x)) pts.push_back(x);
    });
    for (const auto& a : pts) {
      for (const auto& b : pts) EXPECT_EQ(evaluate(d, a + b), evaluate(d, a) + evaluate(d, b)) << tau.str();
    }
  }
  Matrix r = M({{-1, 2}, {1, 2}});
  PolyhedralDivisor toric(fixture::p1(), fixture::sigma(), {{"0", fixture::poly(M({{1, 3}}), r)}});
  EXPECT_EQ(refinement_sigma(toric).maximal_cones(), std::vector<Cone>{dual_cone(fixture::sigma())});
  PolyhedralDivisor affine(fixture::p1(), fixture::sigma(), {{"0", Polyhedron::empty(2)}});
  EXPECT_THROW(refinement_sigma(affine), std::invalid_argument);
}

TEST(ConeAlgebra, Alpha) {
  PolyhedralDivisor d = fixture::cone_divisor();
  EXPECT_EQ(constant_c(d), 1);
  EXPECT_EQ(alpha(d, W(-2, 1), 1), 1);
  EXPECT_EQ(alpha(d, W(-1, 1), 1), 4);
  EXPECT_EQ(alpha(d, W(0, 1), 1), 4);
  EXPECT_EQ(alpha(d, W(2, 1), 1), 1);
  EXPECT_THROW(alpha(d, W(-1, 1), 1, 3), std::runtime_error);
  EXPECT_THROW(alpha(d, W(3, 1), 1), std::invalid_argument);
  // exhaustive scan for (-1,1): the defining conditions fail for every smaller alpha
  QDivisor du = evaluate(d, W(-1, 1));
  for (long long a = 1; a < 4; ++a) {
    QDivisor da = Rat(a) * du;
    bool c1 = da.is_integral() && degree(da).is_zero();
    bool c2 = a % 2 == 0 && degree(da) >= Rat(4) && (Rat(a / 2) * du).is_integral();
    EXPECT_FALSE(c1 || c2) << a;
  }
}

TEST(ConeAlgebra, HilbertBases) {
  PolyhedralDivisor d = fixture::cone_divisor();
  Cone dual = dual_cone(d.tail());
  Matrix hb = hilbert_basis(dual);
  EXPECT_EQ(std::set<Vec>(hb.begin(), hb.end()), (std::set<Vec>{W(-2, 1), W(-1, 1), W(0, 1), W(1, 1), W(2, 1)}));
  EXPECT_EQ(oracle::check_hilbert_basis(dual, hb, 10), "");
  for (const auto& tau : refinement_sigma(d).maximal_cones()) {
    EXPECT_EQ(oracle::check_hilbert_basis(tau, hilbert_basis(tau), 10), "") << tau.str();
  }
  Cone mid = Cone::from_rays(M({{-1, 1}, {1, 1}}), 2);
  Matrix hm = hilbert_basis(mid);
  EXPECT_EQ(std::set<Vec>(hm.begin(), hm.end()), (std::set<Vec>{W(-1, 1), W(0, 1), W(1, 1)}));
}

TEST(ConeAlgebra, GeneratorWeights) {
  PolyhedralDivisor d = fixture::cone_divisor();
  GeneratorReport r = generator_weights(d);
  EXPECT_EQ(r.alphas.at(W(-2, 1)), 1);
  EXPECT_EQ(r.alphas.at(W(-1, 1)), 4);
  EXPECT_EQ(r.alphas.at(W(0, 1)), 4);
  EXPECT_EQ(r.alphas.at(W(1, 1)), 4);
  Cone mid = Cone::from_rays(M({{-1, 1}, {1, 1}}), 2);
  std::set<Vec> brute;
  for (long long a = 0; a <= 4; ++a) {
    for (long long b = 0; b <= 4; ++b) {
      for (long long c = 0; c <= 4; ++c) brute.insert(W(c - a, a + b + c));
    }
  }
  EXPECT_EQ(r.g_tau.at(mid), brute);
  EXPECT_TRUE(r.g_all.count(zero_vec(2)));
  for (const auto& u : r.g_all) EXPECT_TRUE(in_dual_of(d.tail(), u));
}

TEST(ConeAlgebra, MinimalWeightsAndGenerators) {
  PolyhedralDivisor d = fixture::cone_divisor();
  std::set<Vec> expect{W(-2, 1), W(-1, 1), W(0, 1), W(1, 1), W(2, 1)};
  EXPECT_EQ(minimal_weights(d), expect);
  GeneratorReport r = generators(d);
  EXPECT_EQ(r.g_min, expect);
  EXPECT_EQ(r.generator_count(), 6u);
  EXPECT_EQ(r.generators.at(W(0, 1)).size(), 2u);
  EXPECT_EQ(r.generators.at(W(-2, 1)).size(), 1u);
  EXPECT_EQ(r.normality, Verdict::Yes);
  for (const auto& u : r.g_min) EXPECT_TRUE(r.g_all.count(u));
  // soundness: everything up to grading 4 is spanned by products over g_all
  EXPECT_TRUE(oracle::unspanned_weights(d, r.g_all, 4).empty());
  EXPECT_TRUE(oracle::unspanned_weights(d, r.g_min, 4).empty());
  // the weights of grading one alone do not suffice without (0,1)
  std::set<Vec> fewer = expect;
  fewer.erase(W(0, 1));
  EXPECT_FALSE(oracle::unspanned_weights(d, fewer, 2).empty());
}

TEST(ConeAlgebra, ProjectiveNormality) {
  EXPECT_EQ(projectively_normal(fixture::ldp_h()), Verdict::Yes);
  Dualized nn = dualize_psi(non_normal());
  ASSERT_EQ(is_ample(nn.h).verdict, Verdict::Yes);
  PolyhedralDivisor d = cone_divisor(nn.h);
  GeneratorReport r = generators(d);
  EXPECT_TRUE(r.g_min.count(W(3, 2)));
  EXPECT_EQ(r.normality, Verdict::No);
  EXPECT_EQ(projectively_normal(nn.h), Verdict::No);
  // brute force: grading-one weights miss (3,2)
  std::set<Vec> ones;
  for (const auto& w : oracle::graded_weights(d, 1)) ones.insert(w);
  std::vector<Vec> miss = oracle::unspanned_weights(d, ones, 2);
  EXPECT_NE(std::find(miss.begin(), miss.end(), W(3, 2)), miss.end());
  EXPECT_TRUE(oracle::unspanned_weights(d, r.g_min, 4).empty());
  // positive genus base
  auto h = fixture::ldp_h();
  Curve ell = Curve::abstract(1, {"0", "inf", "1"});
  MarkedFansyDivisor eb(ell, h.base().tailfan(),
                        {{"0", h.base().slice("0").maximal_cells()}, {"inf", h.base().slice("inf").maximal_cells()},
                         {"1", h.base().slice("1").maximal_cells()}},
                        h.base().marks());
  EXPECT_EQ(projectively_normal(SupportFunction(eb, h.linear(), h.pieces())), Verdict::Unknown);
}

TEST(ConeAlgebra, HilbertFunctionCrossCheck) {
  PolyhedralDivisor d = fixture::cone_divisor();
  EXPECT_EQ(oracle::graded_dim(d, 1), 6);
  EXPECT_EQ(oracle::graded_dim(d, 2), 17);
  EXPECT_EQ(oracle::graded_dim(d, 3), 34);
  HilbertResult hp = hilbert_polynomial(recover_divpoly(d));
  for (long long k = 1; k <= 3; ++k) EXPECT_EQ(hp.poly(Rat(k)), Rat(oracle::graded_dim(d, k)));
}

TEST(ConeAlgebra, RandomRoundTrips) {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    DivisorialPolytope psi = randgen::random_divpoly(rng);
    Dualized dz = dualize_psi(psi);
    PolyhedralDivisor d = cone_divisor(dz.h);
    ASSERT_EQ(is_proper(d).verdict, Verdict::Yes) << i;
    Dualized back = recover(d);
    EXPECT_EQ(back.base, dz.base) << i;
    EXPECT_EQ(back.h, dz.h) << i;
    EXPECT_EQ(recover_divpoly(d), psi) << i;
    for (const auto& tau : refinement_sigma(d).maximal_cones()) {
      EXPECT_EQ(oracle::check_hilbert_basis(tau, hilbert_basis(tau), 10), "") << i;
    }
  }
}
