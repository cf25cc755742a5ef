#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "bishop/composers.hpp"
#include "bishop/error.hpp"
#include "bishop/semantic_value.hpp"
#include "test_support.hpp"

namespace bishop {
namespace {

using test::concept_of;
using test::world_of;

constexpr double kGamma = 0.38;

Raster points(int w, int h, const std::vector<Pixel>& at) {
  std::vector<test::PaintedObject> objs;
  for (std::size_t i = 0; i < at.size(); ++i) {
    objs.push_back({static_cast<ObjectId>(i), {at[i]}, Rgb{10, 20, 30}});
  }
  return test::paint(w, h, objs);
}

OrderingParams extremum(Axis axis, OrderingMode mode) {
  OrderingParams p;
  p.axis = axis;
  p.mode = mode;
  return p;
}

OrderingParams centre() {
  OrderingParams p;
  p.mode = OrderingMode::Region;
  p.region_point = BoardPos{0.5, 0.5};
  p.point_name = "centre";
  return p;
}

const LexicalEntry& entry(std::string_view word, ComposerKind kind) {
  for (const auto* e : test::packaged_lexicon().lookup(word)) {
    if (e->composer.kind == kind) return *e;
  }
  throw std::logic_error("no such entry");
}

TEST(Referents, SingleUsesArgmaxWithLowestIdTieBreak) {
  EXPECT_EQ(referents_single(concept_of({{3, 0.9}, {5, 0.1}})), 3);
  EXPECT_EQ(referents_single(concept_of({{3, 0.5}, {5, 0.5}})), 3);
  EXPECT_EQ(referents_single(concept_of({{3, 9.0}, {5, 1.0}})), 3);
  EXPECT_THROW(referents_single(Concept{}), Error);
}

TEST(Referents, GroupCutoff) {
  EXPECT_EQ(referents_group(concept_of({{1, 0.4}, {2, 0.4}, {3, 0.4}})),
            (std::vector<ObjectId>{1, 2, 3}));
  EXPECT_EQ(referents_group(concept_of({{1, 1.0}, {2, 0.9}, {3, 0.1}}), 0.5),
            (std::vector<ObjectId>{1, 2}));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Concept c = concept_of({});
    for (ObjectId id = 0; id < 8; ++id) c.weights[id] = u(rng);
    const auto group = referents_group(c);
    EXPECT_NE(std::find(group.begin(), group.end(), referents_single(c)), group.end());
  }
}

TEST(ComposeColour, TopKSeparatesClasses) {
  const SceneState s(test::make_scene({{'p', 0.2, 0.3},
                                       {'g', 0.5, 0.3},
                                       {'p', 0.8, 0.4},
                                       {'g', 0.3, 0.7},
                                       {'p', 0.7, 0.8}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const Concept all = default_concept(w, RefBehaviour::Single);
  const Concept purple =
      compose_colour(test::packaged_lexicon().colour_model("purple"), all, w);
  std::vector<std::pair<double, ObjectId>> ranked;
  for (const auto& [id, weight] : purple.weights) ranked.push_back({weight, id});
  std::sort(ranked.rbegin(), ranked.rend());
  std::vector<ObjectId> top{ranked[0].second, ranked[1].second, ranked[2].second};
  std::sort(top.begin(), top.end());
  EXPECT_EQ(top, (std::vector<ObjectId>{0, 2, 4}));
  EXPECT_EQ(purple.ref_kind, RefKind::Single);

  // Applying the same composer again keeps the ranking.
  const Concept twice =
      compose_colour(test::packaged_lexicon().colour_model("purple"), purple, w);
  for (const auto& [a, wa] : purple.weights) {
    for (const auto& [b, wb] : purple.weights) {
      if (!twice.weights.count(a) || !twice.weights.count(b)) continue;
      EXPECT_EQ(wa < wb, twice.weights.at(a) < twice.weights.at(b));
    }
  }
}

TEST(ComposeColour, WeightAtTheMeanIsThePeak) {
  const SceneState s(test::make_scene({{'g', 0.4, 0.4}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const auto rgb = v.average_rgb(0);
  ColourModel m;
  m.name = "exact";
  m.mean = Eigen::Vector3d(rgb[0], rgb[1], rgb[2]);
  m.cov = Eigen::Vector3d(20, 30, 40).asDiagonal();
  const Concept c = compose_colour(m, default_concept(w, RefBehaviour::Single), w);
  const double peak = 1.0 / std::sqrt(std::pow(2 * std::numbers::pi, 3) * 20 * 30 * 40);
  EXPECT_NEAR(c.weights.at(0), peak, peak * 1e-12);
}

TEST(ApplyOrdering, MinMatchesFormula) {
  const Raster r = points(512, 512, {{300, 40}, {20, 90}, {200, 400}, {480, 10}, {100, 250}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept c =
      apply_ordering(extremum(Axis::X, OrderingMode::Min), default_concept(w, RefBehaviour::Single), w);
  // Sorted by x: 1 (20), 4 (100), 2 (200), 0 (300), 3 (480).
  const std::vector<std::pair<ObjectId, double>> order{
      {1, 20}, {4, 100}, {2, 200}, {0, 300}, {3, 480}};
  double last = 2.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double vn = (order[i].second - 20) / 460.0;
    const double expected = std::pow(kGamma, static_cast<double>(i) * (1 + vn));
    EXPECT_NEAR(c.weights.at(order[i].first), expected, 1e-12);
    EXPECT_LT(c.weights.at(order[i].first), last);
    last = c.weights.at(order[i].first);
  }
  EXPECT_EQ(c.weights.at(1), 1.0);
  EXPECT_EQ(referents_single(c), 1);
  EXPECT_EQ(c.ref_kind, RefKind::Single);
}

TEST(ApplyOrdering, MaxMatchesFormula) {
  const Raster r = points(512, 512, {{300, 40}, {20, 90}, {200, 400}, {480, 10}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept c =
      apply_ordering(extremum(Axis::Y, OrderingMode::Max), default_concept(w, RefBehaviour::Single), w);
  // Sorted by y descending: 2 (400), 1 (90), 0 (40), 3 (10).
  const std::vector<std::pair<ObjectId, double>> order{{2, 400}, {1, 90}, {0, 40}, {3, 10}};
  for (std::size_t j = 0; j < order.size(); ++j) {
    const double vn = (order[j].second - 10) / 390.0;
    EXPECT_NEAR(c.weights.at(order[j].first),
                std::pow(kGamma, static_cast<double>(j) * (1 + (1 - vn))), 1e-12);
  }
  EXPECT_EQ(referents_single(c), 2);
}

TEST(ApplyOrdering, RegionEndpoints) {
  // A 2x2 block centred exactly on the board centre, one far object.
  const Raster r = test::paint(
      512, 512, {{0, test::block(255, 255, 2, 2), {}}, {1, {{10, 10}}, {}}, {2, {{300, 200}}, {}}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept c = apply_ordering(centre(), default_concept(w, RefBehaviour::Single), w);
  EXPECT_NEAR(c.weights.at(0), 0.38, 1e-12);
  EXPECT_NEAR(c.weights.at(1), 0.38 * 0.38, 1e-12);
  EXPECT_GT(c.weights.at(2), c.weights.at(1));
  EXPECT_LT(c.weights.at(2), c.weights.at(0));
}

TEST(ApplyOrdering, SingleCandidate) {
  const Raster r = points(64, 64, {{5, 5}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept all = default_concept(w, RefBehaviour::Single);
  EXPECT_EQ(apply_ordering(extremum(Axis::X, OrderingMode::Min), all, w).weights.at(0), 1.0);
  EXPECT_EQ(apply_ordering(extremum(Axis::X, OrderingMode::Max), all, w).weights.at(0), 1.0);
  EXPECT_NEAR(apply_ordering(centre(), all, w).weights.at(0), kGamma, 1e-15);
}

TEST(ComposeOrdering, StackedExtremaFollowUtteranceOrder) {
  // 0 is leftmost, 1 is frontmost.
  const Raster r = points(512, 512, {{20, 250}, {250, 480}, {400, 470}, {300, 60}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept all = default_concept(w, RefBehaviour::Single);
  const auto front = extremum(Axis::Y, OrderingMode::Max);
  const auto left = extremum(Axis::X, OrderingMode::Min);
  // "front left": front at token 1, left at token 2, in both nestings.
  const Concept a = compose_ordering(front, 1, compose_ordering(left, 2, all, w), w);
  const Concept b = compose_ordering(left, 2, compose_ordering(front, 1, all, w), w);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(referents_single(a), 1);
  ASSERT_EQ(a.orderings.size(), 2u);
  EXPECT_EQ(a.orderings[0].position, 1);
  // "left front" picks the leftmost.
  const Concept c = compose_ordering(front, 2, compose_ordering(left, 1, all, w), w);
  EXPECT_EQ(referents_single(c), 0);
}

TEST(ComposeGrouping, IsolatedPairWithCount) {
  const SceneState s(test::make_scene(
      {{'g', 0.3, 0.3}, {'g', 0.37, 0.3}, {'p', 0.7, 0.6}, {'g', 0.2, 0.8}, {'p', 0.8, 0.15}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const auto out = compose_grouping(2, default_concept(w, RefBehaviour::Group), w);
  ASSERT_EQ(out.size(), 1u);
  const Concept& g = out[0];
  EXPECT_EQ(g.ref_kind, RefKind::Group);
  ObjectId composite = -1;
  for (const auto& [id, weight] : g.weights) {
    if (v.is_composite(id)) composite = id;
  }
  ASSERT_GE(composite, kCompositeIdBase);
  const auto members = v.members(composite);
  EXPECT_EQ(std::vector<ObjectId>(members.begin(), members.end()), (std::vector<ObjectId>{0, 1}));
  const auto hull = v.pixels(composite);
  for (ObjectId m : {0, 1}) {
    for (Pixel p : v.pixels(m)) {
      ASSERT_NE(std::find(hull.begin(), hull.end(), p), hull.end());
    }
  }
  const double cohesion = v.board_distance(0, 1);
  EXPECT_NEAR(g.weights.at(composite), std::exp(-cohesion / 0.15), 1e-12);
  EXPECT_EQ(g.weights.at(0), g.weights.at(composite));
  EXPECT_TRUE(compose_grouping(3, default_concept(w, RefBehaviour::Group), w).empty());
}

TEST(ComposeGrouping, ExactSizeOnly) {
  // A chain of four within threshold: no isolated three.
  const SceneState s(test::make_scene(
      {{'g', 0.2, 0.5}, {'g', 0.3, 0.5}, {'g', 0.4, 0.5}, {'g', 0.5, 0.5}, {'p', 0.8, 0.2}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const Concept all = default_concept(w, RefBehaviour::Group);
  EXPECT_TRUE(compose_grouping(3, all, w).empty());
  EXPECT_EQ(compose_grouping(4, all, w).size(), 1u);
}

TEST(ComposeGrouping, TighterPairWeighsMore) {
  const SceneState s(test::make_scene(
      {{'g', 0.2, 0.3}, {'g', 0.26, 0.3}, {'p', 0.6, 0.7}, {'p', 0.7, 0.7}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const auto out = compose_grouping(2, default_concept(w, RefBehaviour::Group), w);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_GT(out[0].weights.at(0), out[0].weights.at(2));
  EXPECT_GT(v.board_distance(2, 3), v.board_distance(0, 1));
}

TEST(ComposeSpatial, SingleLandmark) {
  const Raster r = points(512, 512, {{300, 250}, {100, 250}, {300, 50}, {150, 150}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept targets = concept_of({{1, 1}, {2, 1}, {3, 1}});
  const Concept landmark = concept_of({{0, 1}});
  const Concept c = compose_spatial("left", targets, landmark, w);
  EXPECT_DOUBLE_EQ(c.weights.at(1), 1.0 / (200.0 / 512.0));
  EXPECT_FALSE(c.weights.count(2));  // straight behind: 90 degrees off
  const double theta = std::atan2(100.0, 150.0);
  EXPECT_NEAR(c.weights.at(3),
              (1 - theta / (std::numbers::pi / 2)) / (std::hypot(150.0, 100.0) / 512.0), 1e-9);
  EXPECT_FALSE(c.weights.count(0));
  EXPECT_TRUE(c.has_pp);
  EXPECT_EQ(referents_single(c), 1);
}

TEST(ComposeSpatial, TwoLandmarksTakeTheMax) {
  const Raster r = points(512, 512, {{300, 250}, {200, 100}, {100, 250}, {150, 120}});
  VisionContext v(r);
  const World w = world_of(v);
  const Concept targets = concept_of({{2, 1}, {3, 1}});
  const Concept c = compose_spatial("left", targets, concept_of({{0, 1}, {1, 1}}), w);
  for (ObjectId t : {2, 3}) {
    const double expected =
        std::max(v.spatial_score(t, 0, "left"), v.spatial_score(t, 1, "left"));
    EXPECT_DOUBLE_EQ(c.weights.at(t), expected) << t;
  }
}

TEST(ComposeSpatial, FailsWhenNothingQualifies) {
  const Raster r = points(512, 512, {{300, 250}, {400, 250}});
  VisionContext v(r);
  const World w = world_of(v);
  EXPECT_THROW(compose_spatial("left", concept_of({{1, 1}}), concept_of({{0, 1}}), w), Error);
  EXPECT_THROW(compose_spatial("left", concept_of({{0, 1}}), concept_of({{0, 1}}), w), Error);
}

TEST(ComposeAnaphora, RefersToTheRemovedObject) {
  const SceneState s0(test::make_scene({{'g', 0.3, 0.3}, {'p', 0.6, 0.6}}));
  VisionContext v0(s0.raster());
  World first = world_of(v0);
  try {
    compose_anaphora(first);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kAnaphoraUnavailable);
  }

  const SceneState s1 = s0.remove_object(1);
  VisionContext cur(s1.raster());
  VisionContext prev(s1.previous()->raster);
  World w = world_of(cur);
  w.previous = &prev;
  w.last_removed = s1.last_removed();
  const Concept c = compose_anaphora(w);
  EXPECT_EQ(c.weights, (std::map<ObjectId, double>{{1, 1.0}}));
  EXPECT_EQ(c.epoch, Epoch::Previous);
  EXPECT_TRUE(c.determinate);
  EXPECT_EQ(c.ref_kind, RefKind::Single);
}

TEST(ComposeSelect, MarksDeterminateOnly) {
  const Concept c = concept_of({{2, 0.25}, {7, 0.125}});
  const Concept once = compose_select(c);
  EXPECT_EQ(once.weights, c.weights);
  EXPECT_TRUE(once.determinate);
  const Concept twice = compose_select(once);
  EXPECT_EQ(twice.weights, once.weights);
  EXPECT_EQ(twice.determinate, once.determinate);
  EXPECT_FALSE(compose_select(c, false).determinate);
}

TEST(SplitGroup, ExpandsTheBestComposite) {
  const SceneState s(test::make_scene({{'g', 0.2, 0.3},
                                       {'g', 0.27, 0.3},
                                       {'g', 0.235, 0.38},
                                       {'p', 0.7, 0.7},
                                       {'p', 0.9, 0.2}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  auto groups = compose_grouping(3, default_concept(w, RefBehaviour::Group), w);
  ASSERT_EQ(groups.size(), 1u);
  Concept g = groups[0];
  g.split_groups = true;
  const Concept split = split_group(g, w);
  EXPECT_EQ(split.weights, (std::map<ObjectId, double>{{0, 1.0}, {1, 1.0}, {2, 1.0}}));
  EXPECT_EQ(split.ref_kind, RefKind::Single);

  const Concept plain = concept_of({{3, 0.5}, {4, 0.25}});
  EXPECT_EQ(split_group(plain, w).weights, plain.weights);

  // "the frontmost one of the three ..."
  const Concept front =
      apply_ordering(extremum(Axis::Y, OrderingMode::Max), split, w);
  EXPECT_EQ(referents_single(front), 2);
}

TEST(RestrictToGroup, Preconditions) {
  const SceneState s(test::make_scene(
      {{'g', 0.2, 0.3}, {'g', 0.27, 0.3}, {'p', 0.7, 0.7}, {'p', 0.9, 0.2}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const Concept all = default_concept(w, RefBehaviour::Single);
  const auto groups = compose_grouping(2, default_concept(w, RefBehaviour::Group), w);
  ASSERT_EQ(groups.size(), 1u);
  const Concept head = apply_ordering(extremum(Axis::X, OrderingMode::Max), all, w);
  // Restricting replays nothing here (no recorded orderings) but drops
  // everything outside the pair.
  const Concept r = restrict_to_group(all, groups[0], w);
  EXPECT_EQ(r.weights.size(), 2u);
  EXPECT_TRUE(r.weights.count(0) && r.weights.count(1));

  Concept with_pp = all;
  with_pp.has_pp = true;
  EXPECT_THROW(restrict_to_group(with_pp, groups[0], w), Error);
  EXPECT_THROW(restrict_to_group(all, head, w), Error);
}

TEST(ObjectsFor, PrefersComposites) {
  const SceneState s(test::make_scene({{'g', 0.2, 0.3}, {'g', 0.27, 0.3}, {'p', 0.7, 0.7}}));
  VisionContext v(s.raster());
  const World w = world_of(v);
  const auto groups = compose_grouping(std::nullopt, default_concept(w, RefBehaviour::Group), w);
  ASSERT_EQ(groups.size(), 1u);
  const auto ids = objects_for(groups[0], w);
  ASSERT_EQ(ids.size(), 1u);
  EXPECT_TRUE(v.is_composite(ids[0]));
}

TEST(ChainFlush, RunsInnermostFirst) {
  const Raster r = points(512, 512, {{300, 250}, {100, 400}, {200, 100}});
  VisionContext v(r);
  const World w = world_of(v);
  const Lexicon& lex = test::packaged_lexicon();
  const Concept c = default_concept(w, RefBehaviour::Single);
  Function f;
  f.chain = {{&entry("the", ComposerKind::Select), 0},
             {&entry("leftmost", ComposerKind::OrderingExtremum), 1}};
  const Concept flushed = chain_flush(f, c, w, lex);
  const Concept direct =
      compose_select(compose_ordering(extremum(Axis::X, OrderingMode::Min), 1, c, w));
  EXPECT_EQ(flushed.weights, direct.weights);
  EXPECT_TRUE(flushed.determinate);
  EXPECT_EQ(referents_single(flushed), 1);
}

TEST(ComposerProperties, PositiveWeightsAndReferentMonotonicity) {
  const Lexicon& lex = test::packaged_lexicon();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SceneState s = generate_scene(seed, 12);
    VisionContext v(s.raster());
    const World w = world_of(v);
    const Concept all = default_concept(w, RefBehaviour::Single);
    const Concept green = compose_colour(lex.colour_model("green"), all, w);
    const auto in = referents_group(all);
    const std::set<ObjectId> domain(in.begin(), in.end());
    for (const Concept* c : {&green}) {
      for (const auto& [id, weight] : c->weights) {
        EXPECT_GT(weight, 0.0);
        EXPECT_TRUE(domain.count(id));
      }
    }
    const auto green_refs = referents_group(green);
    const std::set<ObjectId> gdom(green_refs.begin(), green_refs.end());
    for (const auto& p : {extremum(Axis::X, OrderingMode::Min), extremum(Axis::Y, OrderingMode::Max),
                          centre()}) {
      const Concept o = compose_ordering(p, 1, green, w);
      for (const auto& [id, weight] : o.weights) {
        EXPECT_GT(weight, 0.0);
        EXPECT_TRUE(gdom.count(id)) << seed;
      }
    }
  }
}

}  // namespace
}  // namespace bishop
