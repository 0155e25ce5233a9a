#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fmnet/expansion.hpp"
#include "fmnet/fmm.hpp"
#include "fmnet/testing/generators.hpp"
#include "fmnet/testing/oracles.hpp"

namespace fmnet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TEST(FundamentalSolution, ClosedForm) {
  EXPECT_DOUBLE_EQ(fundamental_solution(1.0), 0.0);
  EXPECT_NEAR(fundamental_solution(std::numbers::e), 1.0 / kTwoPi, 1e-15);
  EXPECT_NEAR(fundamental_solution(0.5), -0.110318, 1e-6);
  EXPECT_THROW(fundamental_solution(0.0), std::domain_error);
  EXPECT_THROW(fundamental_solution(-1.0), std::domain_error);
}

TEST(Charges, KindMustMatchSign) {
  EXPECT_NO_THROW(validate(PointCharge{{0, 0}, -1.0, ChargeKind::goal}));
  EXPECT_NO_THROW(validate(PointCharge{{0, 0}, 0.0, ChargeKind::passive}));
  EXPECT_THROW(validate(PointCharge{{0, 0}, 1.0, ChargeKind::goal}), std::invalid_argument);
  EXPECT_THROW(validate(PointCharge{{0, 0}, 0.5, ChargeKind::passive}), std::invalid_argument);
  EXPECT_EQ(make_charge({0, 0}, 2.0).kind, ChargeKind::obstacle);
  EXPECT_EQ(charge_kind_from_string("goal"), ChargeKind::goal);
  EXPECT_THROW(charge_kind_from_string("sink"), std::invalid_argument);
}

TEST(ExpansionOrder, CeilLog2WithFloor) {
  EXPECT_EQ(order_for_epsilon(1e-3), 10);
  EXPECT_EQ(order_for_epsilon(1e-6), 20);
  EXPECT_EQ(order_for_epsilon(1e-9), 30);
  EXPECT_EQ(order_for_epsilon(0.1), 4);
  EXPECT_THROW(order_for_epsilon(0.0), std::invalid_argument);
  EXPECT_THROW(order_for_epsilon(0.2), std::invalid_argument);
}

TEST(EvalDirect, GoalAtDistanceE) {
  const std::vector<PointCharge> q{{{0, 0}, -1.0, ChargeKind::goal}};
  const std::vector<Vec2> t{{std::numbers::e, 0.0}};
  const auto s = eval_direct(q, t);
  EXPECT_NEAR(s[0].potential, 1.0 / kTwoPi, 1e-15);
  // Gradient points away from the goal, so descent moves towards it.
  EXPECT_GT(s[0].gradient.x, 0.0);
}

TEST(EvalDirect, ObstacleRaisesPotentialNearby) {
  const std::vector<PointCharge> q{{{0, 0}, 1.0, ChargeKind::obstacle}};
  const std::vector<Vec2> t{{0.3, 0.0}, {0.6, 0.0}};
  const auto s = eval_direct(q, t);
  EXPECT_NEAR(s[0].potential - s[1].potential, std::log(2.0) / kTwoPi, 1e-14);
}

TEST(EvalDirect, SymmetricObstaclesCancelGradient) {
  const std::vector<PointCharge> q{{{-0.4, 0.1}, 1.0, ChargeKind::obstacle}, {{0.4, 0.1}, 1.0, ChargeKind::obstacle}};
  const std::vector<Vec2> t{{0.0, 0.1}};
  const auto s = eval_direct(q, t);
  EXPECT_NEAR(s[0].gradient.x, 0.0, 1e-15);
  EXPECT_NEAR(s[0].gradient.y, 0.0, 1e-15);
}

TEST(EvalDirect, SkipsCoincidentSource) {
  const std::vector<PointCharge> q{{{0.2, 0.2}, 1.0, ChargeKind::obstacle}};
  const std::vector<Vec2> t{{0.2, 0.2}};
  const auto s = eval_direct(q, t);
  EXPECT_EQ(s[0].potential, 0.0);
  EXPECT_EQ(s[0].gradient, (Vec2{0, 0}));
}

TEST(EvalDirect, MatchesRealArithmeticOracle) {
  testing::Gen gen(3);
  const auto q = gen.charges(50);
  const auto t = gen.uniform_points(50);
  const auto err = testing::relative_error(q, t, eval_direct(q, t), testing::direct_field(q, t));
  EXPECT_LT(err.potential, 1e-13);
  EXPECT_LT(err.gradient, 1e-13);
}

TEST(P2M, MonopoleAtCenter) {
  const Box box = Box::unit_root().child(2);
  const std::vector<PointCharge> q{{box.center, 1.0, ChargeKind::obstacle}};
  const auto m = p2m(q, box, 8);
  EXPECT_DOUBLE_EQ(m.coefficient(0).real(), 1.0);
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(std::abs(m.coefficient(k)), 0.0);
}

TEST(P2M, DipoleHasZeroMonopole) {
  const Box box = Box::unit_root();
  const std::vector<PointCharge> q{{{0.1, 0.0}, 1.0, ChargeKind::obstacle}, {{-0.1, 0.0}, -1.0, ChargeKind::goal}};
  const auto m = p2m(q, box, 8);
  EXPECT_EQ(std::abs(m.coefficient(0)), 0.0);
  EXPECT_GT(std::abs(m.coefficient(1)), 0.0);
}

TEST(P2M, FarFieldOfRandomCluster) {
  testing::Gen gen(4);
  const Box box{{0.3, -0.2}, 0.1, 3};
  for (double eps : {1e-3, 1e-6, 1e-9}) {
    const auto q = gen.charges(10, box);
    const auto m = p2m(q, box, order_for_epsilon(eps));
    const double radius = box.half_width * std::numbers::sqrt2;
    std::vector<Vec2> t;
    for (int i = 0; i < 16; ++i) {
      const double a = kTwoPi * i / 16.0;
      t.push_back(box.center + Vec2{5 * radius * std::cos(a), 5 * radius * std::sin(a)});
    }
    std::vector<FieldSample> fast;
    for (auto z : t) fast.push_back(m.evaluate(z));
    const auto err = testing::relative_error(q, t, fast, testing::direct_field(q, t));
    EXPECT_LE(err.potential, eps) << eps;
    EXPECT_LE(err.gradient, eps) << eps;
  }
}

TEST(Translations, M2MKeepsTotalCharge) {
  const Box parent = Box::unit_root();
  const Box child = parent.child(1).child(2);
  const std::vector<PointCharge> q{{child.center, -2.5, ChargeKind::goal}};
  const auto shifted = m2m(p2m(q, child, 10), parent);
  EXPECT_DOUBLE_EQ(shifted.coefficient(0).real(), -2.5);
  EXPECT_GT(std::abs(shifted.coefficient(1)), 0.0);
}

TEST(Translations, L2LOfZeroIsZero) {
  const Expansion zero(ExpansionKind::local, Box::unit_root(), 12);
  EXPECT_TRUE(l2l(zero, Box::unit_root().child(0)).is_zero());
}

TEST(Translations, M2LRejectsNeighbours) {
  const Box root = Box::unit_root();
  const Expansion m(ExpansionKind::multipole, root.child(0).child(0), 6);
  EXPECT_THROW(m2l(m, root.child(0).child(3)), std::logic_error);
  EXPECT_THROW(m2l(m, root.child(3)), std::logic_error);
  EXPECT_NO_THROW(m2l(m, root.child(3).child(3)));
}

TEST(Translations, ChainMatchesDirect) {
  // charges in a deep box -> m2m to its parent -> m2l to a separated box ->
  // l2l to a grandchild, evaluated there.
  testing::Gen gen(5);
  const Box root = Box::unit_root();
  const Box src = root.child(0).child(0);
  const Box dst = root.child(3).child(3);
  const Box dst_leaf = dst.child(1).child(2);
  const int p = order_for_epsilon(1e-9);
  const auto q = gen.charges(20, src.child(3));
  const auto local = l2l(l2l(m2l(m2m(p2m(q, src.child(3), p), src), dst), dst.child(1)), dst_leaf);
  const auto t = gen.uniform_points(30, dst_leaf);
  std::vector<FieldSample> fast;
  for (auto z : t) fast.push_back(local.evaluate(z));
  const auto err = testing::relative_error(q, t, fast, testing::direct_field(q, t));
  EXPECT_LE(err.potential, 1e-9);
  EXPECT_LE(err.gradient, 1e-9);
}

TEST(Fmm, EmptyChargesGiveZeros) {
  const std::vector<Vec2> t{{0.1, 0.2}, {-0.5, 0.5}};
  const auto s = evaluate(std::vector<PointCharge>{}, t, 1e-6);
  for (const auto& x : s) {
    EXPECT_EQ(x.potential, 0.0);
    EXPECT_EQ(x.gradient, (Vec2{0, 0}));
  }
}

TEST(Fmm, RejectsBadEpsilonAndForeignTree) {
  const std::vector<PointCharge> q{{{0.1, 0.1}, 1.0, ChargeKind::obstacle}};
  const std::vector<Vec2> t{{0.5, 0.5}};
  EXPECT_THROW(evaluate(q, t, 0.5), std::invalid_argument);
  EXPECT_THROW(evaluate(q, t, 0.0), std::invalid_argument);
  const auto wrong = build_tree(t);
  EXPECT_THROW(evaluate(wrong, q, t, 1e-6), std::logic_error);
}

TEST(Fmm, LargeConfigurationWithinTolerance) {
  testing::Gen gen(6);
  const auto q = gen.charges(2000);
  const auto t = gen.uniform_points(2000);
  const auto tree = build_fmm_tree(q, t);
  const auto res = evaluate_detailed(tree, q, t, 1e-6);
  const auto err = testing::relative_error(q, t, res.samples, testing::direct_field(q, t));
  EXPECT_LE(err.potential, 1e-6);
  EXPECT_LE(err.gradient, 1e-6);
  // The far field really went through expansions.
  EXPECT_GT(res.stats.m2l, 0U);
  EXPECT_LT(res.stats.p2p_interactions, q.size() * t.size() / 4);
}

TEST(Fmm, RootMonopoleIsTotalStrength) {
  testing::Gen gen(7);
  const auto q = gen.charges(300);
  const auto t = gen.uniform_points(10);
  const auto res = evaluate_detailed(build_fmm_tree(q, t), q, t, 1e-6);
  double total = 0.0;
  for (const auto& c : q) total += c.strength;
  EXPECT_NEAR(std::abs(res.root_multipole.coefficient(0).real()), std::abs(total), 1e-12);
}

TEST(FmmProperty, RandomConfigurationsAtThreeTolerances) {
  testing::Gen gen(8);
  for (int iter = 0; iter < 40; ++iter) {
    const auto q = gen.charges(gen.range(1, 300), Box::unit_root());
    const auto t = gen.coin() ? gen.uniform_points(gen.range(1, 300)) : gen.clustered_points(gen.range(1, 300), 3, 0.05);
    TreeOptions opts;
    opts.leaf_capacity = gen.range(1, 40);
    for (double eps : {1e-3, 1e-6, 1e-9}) {
      const auto s = evaluate(q, t, eps, opts);
      const auto err = testing::relative_error(q, t, s, testing::direct_field(q, t));
      ASSERT_LE(err.potential, eps) << "iter " << iter << " eps " << eps;
      ASSERT_LE(err.gradient, eps) << "iter " << iter << " eps " << eps;
    }
  }
}

TEST(FmmProperty, HarmonicAndGradientConsistent) {
  testing::Gen gen(14);
  const auto q = gen.charges(100);
  const double h = 1e-4;
  std::vector<Vec2> centres, t;
  while (centres.size() < 50) {
    const Vec2 c = gen.point_in(Box{{0, 0}, 0.95, 0});
    double dmin = 1.0;
    for (const auto& s : q) dmin = std::min(dmin, distance(s.position, c));
    if (dmin < 0.02) continue;
    centres.push_back(c);
    for (Vec2 d : {Vec2{h, 0}, Vec2{-h, 0}, Vec2{0, h}, Vec2{0, -h}, Vec2{0, 0}}) t.push_back(c + d);
  }
  const auto s = evaluate(q, t, 1e-9);
  for (std::size_t i = 0; i < centres.size(); ++i) {
    const auto* f = &s[5 * i];
    const double lap = (f[0].potential + f[1].potential + f[2].potential + f[3].potential - 4 * f[4].potential) / (h * h);
    const Vec2 fd{(f[0].potential - f[1].potential) / (2 * h), (f[2].potential - f[3].potential) / (2 * h)};
    const double g = std::max(norm(f[4].gradient), 1.0);
    EXPECT_LT(std::abs(lap), 1e-2 * g / h) << i;
    EXPECT_LT(norm(fd - f[4].gradient), 1e-4 * g) << i;
  }
}

TEST(FmmProperty, TreeIgnoresStrengths) {
  testing::Gen gen(9);
  auto q = gen.charges(400);
  const auto t = gen.uniform_points(100);
  const auto a = build_fmm_tree(q, t);
  for (std::size_t i = 0; i + 1 < q.size(); i += 2) std::swap(q[i].strength, q[i + 1].strength);
  for (auto& c : q) c.strength *= 1e6;
  EXPECT_TRUE(a == build_fmm_tree(q, t));
}

TEST(FmmProperty, DeterministicAcrossCalls) {
  testing::Gen gen(10);
  const auto q = gen.charges(500);
  const auto t = gen.uniform_points(500);
  const auto a = evaluate(q, t, 1e-6);
  const auto b = evaluate(q, t, 1e-6);
  for (std::size_t i = 0; i < t.size(); ++i) {
    ASSERT_EQ(a[i].potential, b[i].potential);
    ASSERT_EQ(a[i].gradient, b[i].gradient);
  }
}

}  // namespace
}  // namespace fmnet
