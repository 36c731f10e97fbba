#include "divpoly/fansy.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace divpoly;
using fixture::interval;
using fixture::neg;
using fixture::pos;
using fixture::ray_from;

namespace {

Verdict condition(const FansyReport& r, int k) {
  for (const auto& c : r.conditions) {
    if (c.condition == k) return c.verdict;
  }
  return Verdict::Unknown;
}

}  // namespace

TEST(Fansy, Construction) {
  auto x = fixture::ldp_fansy();
  EXPECT_EQ(x.support(), (std::vector<std::string>{"0", "1", "inf"}));
  EXPECT_EQ(x.slice("0").vertices().size(), 3u);
  EXPECT_EQ(x.slice("inf").maximal_cells().size(), 2u);
  // points off the support carry the tail fan
  Curve c = fixture::p1().with_fresh_point("x");
  MarkedFansyDivisor y(c, fixture::line_fan(), {{"x", {pos().as_polyhedron(), neg().as_polyhedron()}}}, {});
  EXPECT_TRUE(y.slices().empty());
  EXPECT_THROW(MarkedFansyDivisor(fixture::p1(), fixture::line_fan(), {}, {Cone::from_rays(fixture::M({{2}}), 2)}),
               std::invalid_argument);
  EXPECT_THROW(MarkedFansyDivisor(fixture::p1(), fixture::line_fan(), {{"q", {}}}, {}), std::invalid_argument);
}

TEST(Fansy, Validate) {
  FansyReport r = validate(fixture::ldp_fansy());
  EXPECT_EQ(r.verdict, Verdict::Yes);
  ASSERT_EQ(r.conditions.size(), 4u);
  EXPECT_EQ(validate(fixture::ldp_fansy({neg()})).verdict, Verdict::Yes);
  EXPECT_EQ(validate(fixture::ldp_fansy({})).verdict, Verdict::Yes);
  // zero cone marked alone: upward closure fails
  FansyReport z = validate(fixture::ldp_fansy({Cone::zero(1)}));
  EXPECT_EQ(z.verdict, Verdict::No);
  EXPECT_EQ(condition(z, 4), Verdict::No);
  // zero cone marked with both rays: it misses deg D^sigma
  FansyReport all = validate(fixture::ldp_fansy({Cone::zero(1), pos(), neg()}));
  EXPECT_EQ(condition(all, 3), Verdict::No);
  EXPECT_EQ(condition(all, 4), Verdict::Yes);
  // a gap in a slice
  MarkedFansyDivisor gap(fixture::p1(), fixture::line_fan(), {{"0", {ray_from(0, -1), ray_from(1, 1)}}}, {});
  EXPECT_EQ(condition(validate(gap), 1), Verdict::No);
  // improper D^sigma: degree reaches outside the marked ray
  MarkedFansyDivisor bad(fixture::p1(), fixture::line_fan(),
                         {{"0", {ray_from(0, -1), ray_from(0, 1)}}, {"inf", {ray_from(-1, -1), ray_from(-1, 1)}}}, {pos()});
  FansyReport b = validate(bad);
  EXPECT_EQ(condition(b, 2), Verdict::No);
}

TEST(Fansy, DSigma) {
  auto x = fixture::ldp_fansy();
  PolyhedralDivisor dp = dsigma(x, pos());
  EXPECT_EQ(dp.coefficient("0"), ray_from(2, 1));
  EXPECT_EQ(dp.coefficient("inf"), ray_from(Rat(-1, 2), 1));
  EXPECT_EQ(dp.coefficient("1"), ray_from(Rat(-1, 2), 1));
  EXPECT_EQ(is_proper(dp).verdict, Verdict::Yes);
  PolyhedralDivisor dn = dsigma(x, neg());
  EXPECT_EQ(dn.coefficient("0"), ray_from(0, -1));
  EXPECT_EQ(dn.coefficient("1"), ray_from(Rat(-1, 2), -1));
  MarkedFansyDivisor t(fixture::p1(), fixture::line_fan(), {}, {});
  EXPECT_TRUE(dsigma(t, pos()).coeffs().empty());
  EXPECT_THROW(dsigma(x, Cone::zero(1)), std::invalid_argument);
}

TEST(Fansy, DivisorialFan) {
  auto x = fixture::ldp_fansy();
  DivisorialFan s = to_divisorial_fan(x);
  // two marked divisors and the two bounded cells at 0, whose tail {0} is unmarked
  EXPECT_EQ(s.generators.size(), 4u);
  EXPECT_GT(s.members.size(), s.generators.size());
  for (const auto& d : s.members) {
    ProperReport pr = is_proper(d);
    bool ok = pr.verdict == Verdict::Yes;
    for (const auto& g : s.members) {
      if (ok) break;
      if (is_proper(g).verdict == Verdict::Yes && is_face_rel(d, g)) ok = true;
    }
    EXPECT_TRUE(ok) << d.str();
  }
  EXPECT_EQ(from_divisorial_fan(s.members), x);
  auto unmarked = fixture::ldp_fansy({});
  DivisorialFan u = to_divisorial_fan(unmarked);
  EXPECT_EQ(u.generators.size(), 8u);
  EXPECT_EQ(from_divisorial_fan(u.members), unmarked);
  auto one = fixture::ldp_fansy({neg()});
  EXPECT_EQ(from_divisorial_fan(to_divisorial_fan(one).members), one);
  // marks are upward closed on validated objects
  for (const auto& tau : x.marks()) {
    for (const auto& sigma : x.tailfan().cones()) {
      if (is_face(tau, sigma)) EXPECT_TRUE(x.is_marked(sigma));
    }
  }
}

TEST(Fansy, FromDivisorialFanErrors) {
  auto x = fixture::ldp_fansy();
  std::vector<PolyhedralDivisor> g{dsigma(x, pos()), dsigma(x, neg())};
  EXPECT_THROW(from_divisorial_fan(g), std::invalid_argument);
  EXPECT_THROW(from_divisorial_fan({}), std::invalid_argument);
  EXPECT_THROW(to_divisorial_fan(fixture::ldp_fansy({Cone::zero(1)})), std::invalid_argument);
  // a single proper divisor is its own divisorial fan
  std::vector<PolyhedralDivisor> single{dsigma(x, pos())};
  MarkedFansyDivisor f = from_divisorial_fan(single);
  EXPECT_EQ(f.marks(), std::vector<Cone>{pos()});
}
