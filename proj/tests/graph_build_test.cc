#include <gtest/gtest.h>

#include <random>
#include <set>

#include "panelfusion/bipartite.h"
#include "panelfusion/cost_model.h"
#include "panelfusion/errors.h"
#include "panelfusion/features.h"
#include "test_util.h"

namespace panelfusion {
namespace {

using testing::MakePanel;
using testing::Row;

CostModel Soft(CostValue penalty, CostValue scale) {
  CostModel model;
  model.mode = CostMode::kSoft;
  model.penalty = penalty;
  model.cost_scale = scale;
  return model;
}

CostModel Hard(CostValue scale) {
  CostModel model = Soft(0, scale);
  model.mode = CostMode::kHard;
  return model;
}

TEST(NormalizeFeaturesTest, MinMaxOverUnion) {
  const Panel left = MakePanel({}, {"x"}, {{"a", 1, {}, {0}}, {"b", 1, {}, {5}}});
  const Panel right = MakePanel({}, {"x"}, {{"c", 2, {}, {10}}});
  auto [l, r, schema] = NormalizeFeatures(left, right);
  EXPECT_DOUBLE_EQ(l.panelists[0].real[0], 0.0);
  EXPECT_DOUBLE_EQ(l.panelists[1].real[0], 0.5);
  EXPECT_DOUBLE_EQ(r.panelists[0].real[0], 1.0);
  EXPECT_DOUBLE_EQ(schema.real_ranges[0].min, 0);
  EXPECT_DOUBLE_EQ(schema.real_ranges[0].max, 10);
}

TEST(NormalizeFeaturesTest, ConstantFeatureMapsToZero) {
  const Panel left = MakePanel({}, {"x"}, {{"a", 1, {}, {7}}, {"b", 1, {}, {7}}});
  const Panel right = MakePanel({}, {"x"}, {{"c", 2, {}, {7}}});
  auto [l, r, schema] = NormalizeFeatures(left, right);
  EXPECT_EQ(l.panelists[0].real[0], 0.0);
  EXPECT_EQ(l.panelists[1].real[0], 0.0);
  EXPECT_EQ(r.panelists[0].real[0], 0.0);
}

TEST(NormalizeFeaturesTest, DifferentRangesLandInUnitInterval) {
  const Panel left = MakePanel({}, {"big", "small"},
                               {{"a", 1, {}, {0, 0}}, {"b", 1, {}, {100, 1}}});
  const Panel right = MakePanel({}, {"big", "small"}, {{"c", 2, {}, {50, 0.5}}});
  auto [l, r, schema] = NormalizeFeatures(left, right);
  EXPECT_EQ(l.panelists[1].real, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(r.panelists[0].real, (std::vector<double>{0.5, 0.5}));
  // Equal influence: both features contribute the same squared distance.
  const CostModel model = Soft(0, 1000);
  EXPECT_EQ(*Distance(l.panelists[0], r.panelists[0], model), 500);
}

TEST(NormalizeFeaturesTest, ReordersRightColumnsAndIsIdempotent) {
  const Panel left = MakePanel({"g", "a"}, {"x", "y"},
                               {{"l", 1, {"F", "1"}, {0, 10}}});
  const Panel right = MakePanel({"a", "g"}, {"y", "x"},
                                {{"r", 1, {"2", "M"}, {20, 4}}});
  auto [l, r, schema] = NormalizeFeatures(left, right);
  EXPECT_EQ(r.schema, l.schema);
  EXPECT_EQ(r.panelists[0].categorical, (std::vector<std::string>{"M", "2"}));
  EXPECT_EQ(r.panelists[0].real, (std::vector<double>{1.0, 1.0}));
  auto [l2, r2, schema2] = NormalizeFeatures(l, r);
  EXPECT_EQ(l2.panelists[0].real, l.panelists[0].real);
  EXPECT_EQ(r2.panelists[0].real, r.panelists[0].real);
}

TEST(NormalizeFeaturesTest, SchemaMismatchNamesFeature) {
  const Panel left = MakePanel({"g"}, {"x"}, {{"l", 1, {"F"}, {0}}});
  const Panel right = MakePanel({"g"}, {"z"}, {{"r", 1, {"F"}, {0}}});
  try {
    NormalizeFeatures(left, right);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("\"x\""), std::string::npos);
  }
  const Panel extra = MakePanel({"g", "h"}, {"x"}, {{"r", 1, {"F", "1"}, {0}}});
  EXPECT_THROW(NormalizeFeatures(left, extra), ValidationError);
}

TEST(EncodeFeaturesTest, CodesFollowStringOrder) {
  const Panel left = MakePanel({"g"}, {}, {{"a", 1, {"zeta"}, {}},
                                           {"b", 1, {"alpha"}, {}}});
  const Panel right = MakePanel({"g"}, {}, {{"c", 1, {"mid"}, {}}});
  const EncodedPair encoded = EncodeFeatures(left, right);
  EXPECT_EQ(encoded.dictionary[0],
            (std::vector<std::string>{"alpha", "mid", "zeta"}));
  EXPECT_EQ(encoded.left.cat_row(0)[0], 2);
  EXPECT_EQ(encoded.left.cat_row(1)[0], 0);
  EXPECT_EQ(encoded.right.cat_row(0)[0], 1);
}

TEST(DistanceTest, RealDistanceAfterNormalization) {
  // [1,2] vs [1,4] with range 4 on both features.
  const Panel left = MakePanel({"c"}, {"x", "y"},
                               {{"a", 1, {"A"}, {1, 2}}, {"lo", 1, {"A"}, {0, 0}}});
  const Panel right = MakePanel({"c"}, {"x", "y"},
                                {{"b", 1, {"A"}, {1, 4}}, {"hi", 1, {"A"}, {4, 4}}});
  auto [l, r, schema] = NormalizeFeatures(left, right);
  EXPECT_EQ(l.panelists[0].real, (std::vector<double>{0.25, 0.5}));
  EXPECT_EQ(r.panelists[0].real, (std::vector<double>{0.25, 1.0}));
  EXPECT_EQ(*Distance(l.panelists[0], r.panelists[0], Soft(1000, 100)), 25);
  EXPECT_EQ(*Distance(l.panelists[0], r.panelists[0], Hard(100)), 25);
}

TEST(DistanceTest, IdenticalVectorsCostZero) {
  const Panelist p{"a", 1, 1, {"A", "B"}, {0.3, 0.9}};
  EXPECT_EQ(*Distance(p, p, Soft(1000, 1000000)), 0);
  EXPECT_EQ(*Distance(p, p, Hard(1000000)), 0);
}

TEST(DistanceTest, SoftPenaltyPerMismatch) {
  const Panelist a{"a", 1, 1, {"A", "X"}, {0.5}};
  Panelist b{"b", 1, 1, {"B", "X"}, {0.5}};
  EXPECT_EQ(*Distance(a, b, Soft(1000, 100)), 1000);
  b.categorical[1] = "Y";
  EXPECT_EQ(*Distance(a, b, Soft(1000, 100)), 2000);
  EXPECT_FALSE(Distance(a, b, Hard(100)).has_value());
}

TEST(DistanceTest, HardMaskExcludesOnlyMaskedFeatures) {
  const Panelist a{"a", 1, 1, {"A", "X"}, {}};
  const Panelist b{"b", 1, 1, {"A", "Y"}, {}};
  CostModel model = Hard(10);
  model.penalty = 7;
  model.hard_features = {true, false};
  EXPECT_EQ(*Distance(a, b, model), 7);
  model.hard_features = {false, true};
  EXPECT_FALSE(Distance(a, b, model).has_value());
  EXPECT_THROW(model.Validate(3), ValidationError);
}

TEST(DistanceTest, SymmetricAndHardSubsetOfSoft) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<int> cat(0, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    Panelist a{"a", 1, 1, {}, {}}, b{"b", 1, 1, {}, {}};
    for (int k = 0; k < 3; ++k) {
      a.categorical.push_back(std::to_string(cat(rng)));
      b.categorical.push_back(std::to_string(cat(rng)));
    }
    for (int k = 0; k < 5; ++k) {
      a.real.push_back(unit(rng));
      b.real.push_back(unit(rng));
    }
    for (const CostModel& model : {Soft(1000, 1000000), Hard(1000000)}) {
      EXPECT_EQ(Distance(a, b, model), Distance(b, a, model));
      EXPECT_EQ(Distance(a, a, model), std::optional<CostValue>(0));
    }
    const auto hard = Distance(a, b, Hard(1000000));
    const auto soft = Distance(a, b, Soft(1000, 1000000));
    ASSERT_TRUE(soft.has_value());
    if (hard) EXPECT_EQ(*hard, *soft);
  }
}

Panel Quantized(Panel panel) {
  for (Panelist& p : panel.panelists) p.units = static_cast<FlowQuantity>(p.weight);
  panel.unit_scale = 1;
  return panel;
}

TEST(BuildBipartiteTest, DenseWhenCategoriesAgree) {
  const Panel left = Quantized(MakePanel({"c"}, {"x"},
      {{"u1", 2, {"A"}, {0}}, {"u2", 3, {"A"}, {1}}}));
  const Panel right = Quantized(MakePanel({"c"}, {"x"},
      {{"v1", 4, {"A"}, {0}}, {"v2", 1, {"A"}, {1}}}));
  const BipartiteGraph graph = BuildBipartite(left, right, Hard(10), {});
  EXPECT_EQ(graph.network.num_arcs(), 4);
  EXPECT_EQ(graph.network.num_nodes(), 4);
  EXPECT_EQ(graph.network.balance(0), 2);
  EXPECT_EQ(graph.network.balance(3), -1);
  EXPECT_TRUE(graph.isolated.empty());
  // Left-major, right-ascending arc order; lower 0, unbounded upper.
  EXPECT_EQ(graph.network.arc(1).from, 0);
  EXPECT_EQ(graph.network.arc(1).to, 3);
  EXPECT_EQ(graph.network.arc(1).cost, 10);
  EXPECT_EQ(graph.network.arc(1).lower, 0);
  EXPECT_EQ(graph.network.arc(1).upper, kUnboundedCapacity);
}

TEST(BuildBipartiteTest, HardModeExcludesMismatchedBlocks) {
  const Panel left = Quantized(MakePanel({"c"}, {},
      {{"u1", 1, {"A"}, {}}, {"u2", 1, {"B"}, {}}}));
  const Panel right = Quantized(MakePanel({"c"}, {},
      {{"v1", 1, {"A"}, {}}, {"v2", 1, {"B"}, {}}}));
  const BipartiteGraph graph = BuildBipartite(left, right, Hard(10), {});
  ASSERT_EQ(graph.network.num_arcs(), 2);
  EXPECT_EQ(graph.network.arc(0).to, graph.RightNode(0));
  EXPECT_EQ(graph.network.arc(1).to, graph.RightNode(1));
}

TEST(BuildBipartiteTest, FlagsIsolatedNodes) {
  const Panel left = Quantized(MakePanel({"c"}, {}, {{"u1", 1, {"A"}, {}}}));
  const Panel right = Quantized(MakePanel({"c"}, {},
      {{"v1", 1, {"A"}, {}}, {"v2", 1, {"B"}, {}}}));
  const BipartiteGraph graph = BuildBipartite(left, right, Hard(10), {});
  EXPECT_EQ(graph.isolated, std::vector<NodeIndex>{graph.RightNode(1)});
}

TEST(BuildBipartiteTest, ArcCountMatchesBruteForceCount) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> cat(0, 2);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Row> lrows, rrows;
    for (int i = 0; i < 1 + trial % 9; ++i) {
      lrows.push_back({"l" + std::to_string(i), 1,
                       {std::to_string(cat(rng)), std::to_string(cat(rng))},
                       {unit(rng)}});
    }
    for (int j = 0; j < 1 + trial % 7; ++j) {
      rrows.push_back({"r" + std::to_string(j), 1,
                       {std::to_string(cat(rng)), std::to_string(cat(rng))},
                       {unit(rng)}});
    }
    const Panel left = Quantized(MakePanel({"a", "b"}, {"x"}, lrows));
    const Panel right = Quantized(MakePanel({"a", "b"}, {"x"}, rrows));
    long long expected = 0;
    for (const Row& l : lrows) {
      for (const Row& r : rrows) expected += l.cats == r.cats;
    }
    EXPECT_EQ(BuildBipartite(left, right, Hard(100), {}).network.num_arcs(),
              expected);
    EXPECT_EQ(BuildBipartite(left, right, Soft(5, 100), {}).network.num_arcs(),
              static_cast<long long>(lrows.size() * rrows.size()));
  }
}

TEST(PruneEdgesTest, KeepsKCheapest) {
  // The second left node keeps right 0 covered so nothing is restored.
  const auto kept =
      PruneEdges({{{0, 5}, {1, 1}, {2, 3}}, {{0, 0}, {1, 9}, {2, 9}}}, 3, 2);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0], (std::vector<CandidateArc>{{1, 1}, {2, 3}}));
}

TEST(PruneEdgesTest, TiesBrokenByRightId) {
  const auto kept = PruneEdges({{{2, 4}, {0, 4}, {1, 4}}, {{0, 1}, {1, 1}, {2, 0}}}, 3, 1);
  EXPECT_EQ(kept[0], (std::vector<CandidateArc>{{0, 4}}));
  // Right 1 was pruned everywhere; its cheapest arc comes from left 1.
  EXPECT_EQ(kept[1], (std::vector<CandidateArc>{{1, 1}, {2, 0}}));
}

TEST(PruneEdgesTest, RestoresOrphanedRightNode) {
  // Right 2 is nobody's cheapest; its cheapest arc (from left 1) returns.
  const auto kept = PruneEdges({{{0, 1}, {2, 9}}, {{1, 1}, {2, 7}}}, 3, 1);
  EXPECT_EQ(kept[0], (std::vector<CandidateArc>{{0, 1}}));
  EXPECT_EQ(kept[1], (std::vector<CandidateArc>{{1, 1}, {2, 7}}));
}

TEST(PruneEdgesTest, LargeKIsIdentity) {
  const std::vector<std::vector<CandidateArc>> arcs = {{{0, 3}, {1, 2}},
                                                       {{1, 5}}};
  EXPECT_EQ(PruneEdges(arcs, 2, 2), arcs);
  EXPECT_EQ(PruneEdges(arcs, 2, 10), arcs);
}

TEST(PruneEdgesTest, PrunedNetworkIsSubNetworkWithCoverage) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0, 1);
  std::uniform_int_distribution<int> cat(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Row> lrows, rrows;
    for (int i = 0; i < 10 + trial; ++i) {
      lrows.push_back({"l" + std::to_string(i), 1, {std::to_string(cat(rng))},
                       {unit(rng), unit(rng)}});
    }
    for (int j = 0; j < 5 + trial; ++j) {
      rrows.push_back({"r" + std::to_string(j), 1, {std::to_string(cat(rng))},
                       {unit(rng), unit(rng)}});
    }
    const Panel left = Quantized(MakePanel({"c"}, {"x", "y"}, lrows));
    const Panel right = Quantized(MakePanel({"c"}, {"x", "y"}, rrows));
    for (const CostModel& model : {Hard(1000), Soft(100, 1000)}) {
      const int k = 1 + trial % 3;
      const BipartiteGraph full = BuildBipartite(left, right, model, {});
      const BipartiteGraph pruned =
          BuildBipartite(left, right, model, {true, k});
      std::set<std::tuple<NodeIndex, NodeIndex, CostValue>> all;
      for (const NetworkArc& a : full.network.arcs()) {
        all.insert({a.from, a.to, a.cost});
      }
      for (const NetworkArc& a : pruned.network.arcs()) {
        EXPECT_TRUE(all.count({a.from, a.to, a.cost}));
      }
      EXPECT_LE(pruned.network.num_arcs(),
                static_cast<ArcIndex>(lrows.size() * k + rrows.size()));
      EXPECT_EQ(pruned.isolated, full.isolated);
    }
  }
}

TEST(PruneEdgesTest, DefaultK) {
  EXPECT_EQ(DefaultPruneK(10, 10), 16);
  EXPECT_EQ(DefaultPruneK(87576, 4605), 33);
  EXPECT_EQ(DefaultPruneK(70000, 70000), 35);
}

}  // namespace
}  // namespace panelfusion
