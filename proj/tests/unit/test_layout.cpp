#include <gtest/gtest.h>

#include <sstream>

#include "foldloop/errors.hpp"
#include "foldloop/layout.hpp"

using namespace foldloop;

namespace {

std::string fixture(const std::string& name) { return std::string(FOLDLOOP_FIXTURE_DIR) + "/" + name; }

LayoutFixture parse(const std::string& text) {
  std::istringstream in(text);
  return parse_fixture(in);
}

}  // namespace

TEST(Layout, AccessCellsFollowOrientation) {
  LayerStackLayout l(3, 3, 1);
  l.place({0, 1, 1}, {7, Orientation::kXZ});
  auto x = access_cells(l, {0, 1, 1}, 'X');
  auto z = access_cells(l, {0, 1, 1}, 'Z');
  EXPECT_EQ(x, (std::vector<Cell>{{0, 0, 1}, {0, 2, 1}}));
  EXPECT_EQ(z, (std::vector<Cell>{{0, 1, 0}, {0, 1, 2}}));
  l.place({0, 0, 1}, {8, Orientation::kZX});
  EXPECT_EQ(access_cells(l, {0, 1, 1}, 'X').size(), 1u);
}

TEST(Layout, PlaceRejectsConflicts) {
  LayerStackLayout l(2, 2, 2);
  l.place({0, 0, 0}, {1, Orientation::kXZ});
  EXPECT_THROW(l.place({0, 0, 0}, {2, Orientation::kXZ}), std::invalid_argument);
  EXPECT_THROW(l.place({0, 1, 1}, {1, Orientation::kXZ}), std::invalid_argument);
  EXPECT_EQ(l.find(1), (Cell{0, 0, 0}));
  EXPECT_FALSE(l.find(5).has_value());
}

TEST(Layout, GeneratedLayouts) {
  std::vector<PatchCell> ps;
  for (int i = 1; i <= 6; ++i) ps.push_back({i, Orientation::kXZ});
  LayerStackLayout h = generate_layout(LayoutKind::kHallway, ps, {4, 4, 2});
  EXPECT_EQ(h.patch_count(), 6u);
  for (int id = 1; id <= 6; ++id) {
    Cell c = *h.find(id);
    EXPECT_EQ(c.row % 2, 0);
    EXPECT_EQ(c.col % 2, 0);
  }
  LayerStackLayout cb = generate_layout(LayoutKind::kCheckerboard, ps, {4, 4, 2});
  EXPECT_EQ(cb.find(6)->layer, 0);
  EXPECT_EQ(cb.find(6)->row % 2, 1);
  EXPECT_EQ(cb.role(1), LayerRole::kLongRange);
  EXPECT_EQ(generate_layout(LayoutKind::kEmpty, {}, {4, 4, 2}).patch_count(), 0u);
  EXPECT_THROW(generate_layout(LayoutKind::kHallway, ps, {2, 2, 2}), std::invalid_argument);
}

TEST(Layout, AdjacentPatchesRouteThroughCorridor) {
  LayerStackLayout l(3, 3, 1);
  l.place({0, 0, 0}, {1, Orientation::kXZ});
  l.place({0, 0, 2}, {2, Orientation::kXZ});
  std::vector<MergeRequest> reqs = {{1, 'Z', 2, 'Z'}};
  Routing r = routable(l, reqs);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.paths[0], (std::vector<Cell>{{0, 0, 1}}));
  EXPECT_EQ(check_routing(l, reqs, r), "");
  EXPECT_THROW(routable(l, {{1, 'Z', 9, 'Z'}}), std::invalid_argument);
}

TEST(Layout, CheckRoutingCatchesBadWitness) {
  LayerStackLayout l(3, 3, 1);
  l.place({0, 0, 0}, {1, Orientation::kXZ});
  l.place({0, 0, 2}, {2, Orientation::kXZ});
  std::vector<MergeRequest> reqs = {{1, 'Z', 2, 'Z'}};
  Routing r = routable(l, reqs);
  r.paths[0] = {{0, 2, 2}};
  EXPECT_NE(check_routing(l, reqs, r), "");
  r.paths[0] = {{0, 0, 0}};
  EXPECT_NE(check_routing(l, reqs, r), "");
}

TEST(Layout, NodeBudget) {
  LayoutFixture f = load_fixture(fixture("blocked_stack.txt"));
  EXPECT_THROW(routable(f.layout, f.requests, 1), std::runtime_error);
}

TEST(Layout, FixturesMatchExpectations) {
  LayoutFixture a = load_fixture(fixture("blocked_stack.txt"));
  EXPECT_FALSE(routable(a.layout, a.requests).feasible);
  EXPECT_FALSE(plan_with_swaps(a.layout, a.requests, a.expect.max_swaps).feasible);

  LayoutFixture b = load_fixture(fixture("checkerboard_swaps.txt"));
  Routing direct = routable(b.layout, b.requests);
  EXPECT_FALSE(direct.feasible);
  EXPECT_FALSE(direct.certificate.empty());
  SwapPlan plan = plan_with_swaps(b.layout, b.requests, 8);
  ASSERT_TRUE(plan.feasible);
  EXPECT_EQ(plan.swaps.size(), 4u);
  EXPECT_EQ(check_routing(plan.final_layout, b.requests, plan.routing), "");
  EXPECT_FALSE(plan_with_swaps(b.layout, b.requests, 3).feasible);
  EXPECT_THROW(plan_with_swaps(b.layout, b.requests, 9), std::invalid_argument);
}

TEST(Layout, ZeroSwapPlanWhenAlreadyRoutable) {
  LayerStackLayout l(3, 3, 2);
  l.place({0, 0, 0}, {1, Orientation::kXZ});
  l.place({0, 0, 2}, {2, Orientation::kXZ});
  SwapPlan plan = plan_with_swaps(l, {{1, 'Z', 2, 'Z'}}, 2);
  EXPECT_TRUE(plan.feasible);
  EXPECT_TRUE(plan.swaps.empty());
}

TEST(Fixture, ParseErrorsCarryLineNumbers) {
  EXPECT_THROW(load_fixture(fixture("malformed.txt")), ParseError);
  try {
    parse("dims 4 4 1\npatch 0 0 0 1 XZ\npatch 0 9 9 2 XZ\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse("dims 4 4 1\nrequest 1 Q 2 Z\n"), ParseError);
  EXPECT_THROW(parse("bogus\n"), ParseError);
  EXPECT_THROW(load_fixture(fixture("does_not_exist.txt")), ParseError);
}

TEST(Fixture, ParsesEveryDirective) {
  LayoutFixture f = parse(
      "# comment\nname tiny\ndims 3 2 2\nrole 1 mid_range\npatch 0 0 0 1 XZ\npatch 1 1 2 2 ZX\n"
      "request 1 X 2 Z 1\nexpect routable yes\nexpect swaps 0 4\n");
  EXPECT_EQ(f.name, "tiny");
  EXPECT_EQ(f.layout.width(), 3);
  EXPECT_EQ(f.layout.role(1), LayerRole::kMidRange);
  ASSERT_EQ(f.requests.size(), 1u);
  EXPECT_EQ(f.requests[0], (MergeRequest{1, 'X', 2, 'Z', 1}));
  EXPECT_EQ(f.expect.routable, true);
  EXPECT_EQ(f.expect.swaps, 0);
  EXPECT_EQ(f.expect.max_swaps, 4);
  EXPECT_EQ(parse_layer_role(to_string(LayerRole::kShortRange)), LayerRole::kShortRange);
}
