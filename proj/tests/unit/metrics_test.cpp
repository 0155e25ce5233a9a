#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fmnet/metrics.hpp"
#include "fmnet/testing/generators.hpp"
#include "fmnet/testing/oracles.hpp"

namespace fmnet {
namespace {

SpatialGraph path3() {
  SpatialGraph g({{0, 0}, {0.3, 0.4}, {0.3, 0}});
  g.add_edge(0, 1, EdgeLabel::plain);
  g.add_edge(1, 2, EdgeLabel::plain);
  return g;
}

TEST(Efficiency, PathOfThree) {
  const auto g = path3();
  // Hop: pairs at 1, 1, 2.
  EXPECT_DOUBLE_EQ(efficiency(g, PathMetric::hop), (1.0 + 1.0 + 0.5) / 3.0);
  // Lengths 0.5 and 0.4.
  EXPECT_NEAR(efficiency(g, PathMetric::euclidean), (2.0 + 2.5 + 1.0 / 0.9) / 3.0, 1e-15);
}

TEST(Efficiency, DisconnectedPairsCountZero) {
  SpatialGraph g({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  g.add_edge(0, 1, EdgeLabel::plain);
  EXPECT_DOUBLE_EQ(efficiency(g, PathMetric::hop), 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(efficiency(SpatialGraph({{0, 0}, {1, 0}}), PathMetric::hop), 0.0);
  EXPECT_THROW(efficiency(SpatialGraph({{0, 0}}), PathMetric::hop), std::invalid_argument);
}

TEST(Energy, UniAndOmni) {
  const auto g = path3();
  EXPECT_NEAR(energy_uni(g), 0.25 + 0.16, 1e-15);
  // Vertex 1 reaches 0.5, vertex 0 reaches 0.5, vertex 2 reaches 0.4.
  EXPECT_NEAR(energy_omni(g), 0.25 + 0.25 + 0.16, 1e-15);
  EXPECT_EQ(energy_omni(SpatialGraph({{0, 0}, {1, 1}})), 0.0);
}

TEST(Betweenness, StarAndSquare) {
  SpatialGraph star({{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  for (std::size_t v = 1; v < 5; ++v) star.add_edge(0, v, EdgeLabel::plain);
  const auto b = betweenness(star);
  EXPECT_DOUBLE_EQ(b[0], 6.0);
  for (std::size_t v = 1; v < 5; ++v) EXPECT_DOUBLE_EQ(b[v], 0.0);

  SpatialGraph square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  for (std::size_t v = 0; v < 4; ++v) square.add_edge(v, (v + 1) % 4, EdgeLabel::plain);
  for (double x : betweenness(square)) EXPECT_DOUBLE_EQ(x, 0.5);
}

TEST(DegreeHistogram, Path) {
  EXPECT_EQ(degree_histogram(path3()), (std::vector<std::size_t>{0, 2, 1}));
}

TEST(Report, RatiosAndPatches) {
  auto g = path3();
  g.add_edge(0, 2, EdgeLabel::component_patch);
  const auto rep = make_report(Family::RFMN, 0.5, g);
  EXPECT_EQ(rep.edges, 3U);
  EXPECT_TRUE(rep.connected);
  EXPECT_EQ(rep.patch_edges, 1U);
  EXPECT_DOUBLE_EQ(rep.eff_hop, 1.0);
  EXPECT_DOUBLE_EQ(rep.eff_per_edge_hop, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(rep.eff_per_energy_hop, 1.0 / rep.energy_uni);
  EXPECT_DOUBLE_EQ(rep.eff_per_omni_energy_euclid, rep.eff_euclid / rep.energy_omni);

  const auto empty = make_report(Family::RGG, 0.1, SpatialGraph({{0, 0}, {1, 0}}));
  EXPECT_EQ(empty.eff_per_edge_hop, 0.0);
  EXPECT_EQ(empty.eff_per_energy_euclid, 0.0);
  EXPECT_FALSE(empty.connected);
}

TEST(Report, CsvLayout) {
  EXPECT_EQ(csv_header(),
            "family,r,eff_hop,eff_euclid,edges,eff_per_edge_hop,eff_per_edge_euclid,energy_uni,energy_omni,"
            "eff_per_energy_hop,eff_per_energy_euclid,connected,patch_edges");
  const auto row = to_csv_row(make_report(Family::RD, 0.25, path3()));
  EXPECT_TRUE(row.starts_with("RD,0.25,"));
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 12);
  EXPECT_TRUE(row.ends_with(",1,0"));
}

TEST(Family, Names) {
  for (auto f : {Family::RGG, Family::RD, Family::RG, Family::RFMN, Family::FMN}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(family_from_string("RNG"), std::invalid_argument);
}

TEST(MetricsProperty, MatchBruteForce) {
  testing::Gen gen(31);
  for (int iter = 0; iter < 120; ++iter) {
    const auto g = gen.random_graph(gen.range(2, 16), gen.uniform(0.05, 0.7));
    for (auto m : {PathMetric::hop, PathMetric::euclidean}) {
      const double ref = testing::floyd_efficiency(g, m);
      ASSERT_NEAR(efficiency(g, m), ref, 1e-12 * std::max(1.0, ref)) << "iter " << iter;
    }
    const auto fast = betweenness(g);
    const auto ref = testing::enumerated_betweenness(g);
    for (std::size_t v = 0; v < fast.size(); ++v) ASSERT_NEAR(fast[v], ref[v], 1e-9) << "iter " << iter;
  }
}

TEST(MetricsProperty, EfficiencyBoundsAndMonotone) {
  // Adding edges never lowers efficiency; hop efficiency lies in [0, 1].
  testing::Gen gen(32);
  for (int iter = 0; iter < 40; ++iter) {
    auto g = gen.random_graph(gen.range(2, 40), gen.uniform(0.02, 0.3));
    const double before = efficiency(g, PathMetric::hop);
    const double before_e = efficiency(g, PathMetric::euclidean);
    ASSERT_GE(before, 0.0);
    ASSERT_LE(before, 1.0);
    const auto n = g.vertex_count();
    const auto u = gen.index(n);
    auto v = gen.index(n);
    if (u == v) v = (v + 1) % n;
    g.add_edge(u, v, EdgeLabel::plain);
    ASSERT_GE(efficiency(g, PathMetric::hop), before);
    ASSERT_GE(efficiency(g, PathMetric::euclidean), before_e * (1 - 1e-12));
  }
}

}  // namespace
}  // namespace fmnet
