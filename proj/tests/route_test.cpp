//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "retro/route.h"
#include "retro/smiles.h"
#include "test_support.h"

namespace retro {
namespace {

using testing::leaf;
using testing::make_step;

RouteNode sample_route() {
  return make_step("CC(=O)Nc1ccccc1",
                   { leaf("CC(=O)O"), make_step("Nc1ccccc1", { leaf("O=[N+]([O-])c1ccccc1") }) });
}

TEST(Route, Counts) {
  const RouteNode r = sample_route();
  EXPECT_EQ(route_steps(r), 2);
  EXPECT_TRUE(route_solved(r));
  EXPECT_EQ(route_leaves(r).size(), 2u);
  EXPECT_EQ(largest_leaf_atoms(r), 9);
  RouteNode open = r;
  open.reactions[0].children[0].in_stock = false;
  EXPECT_FALSE(route_solved(open));
  EXPECT_EQ(route_steps(leaf("C")), 0);
}

TEST(Route, MarkInStock) {
  RouteNode r = sample_route();
  StockSet stock;
  stock.add("OC(C)=O");
  mark_in_stock(r, stock);
  EXPECT_TRUE(r.reactions[0].children[0].in_stock);
  EXPECT_FALSE(route_solved(r));
}

TEST(Route, JsonRoundTrip) {
  RouteNode r = sample_route();
  r.reactions[0].template_smarts = "[C:1](=[O:2])[N:3]>>[C:1](=[O:2])[OH].[N:3]";
  const auto j = route_to_json(r);
  EXPECT_EQ(j["smiles"], "CC(=O)Nc1ccccc1");
  EXPECT_EQ(j["children"][0]["template"], r.reactions[0].template_smarts);
  const RouteNode back = route_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(route_to_json(back).dump(), j.dump());
  EXPECT_EQ(route_hash(back), route_hash(r));
  EXPECT_THROW(route_from_json(nlohmann::json::parse(R"({"in_stock":true})")),
               std::invalid_argument);
  EXPECT_THROW(route_from_json(nlohmann::json::parse(R"({"smiles":"C","children":[{}]})")),
               std::invalid_argument);
}

TEST(Route, CanonicalizeLabels) {
  const RouteNode r = make_step("OCC", { leaf("C(=O)(C)O") });
  const RouteNode c = canonicalize_labels(r);
  EXPECT_EQ(c.smiles, canonical_smiles("CCO"));
  EXPECT_EQ(c.reactions[0].children[0].smiles, canonical_smiles("CC(=O)O"));
  EXPECT_THROW(canonicalize_labels(leaf("C(C")), std::invalid_argument);
}

TEST(Route, HashIgnoresChildOrder) {
  const RouteNode a = make_step("T", { leaf("A"), leaf("B") });
  const RouteNode b = make_step("T", { leaf("B"), leaf("A") });
  EXPECT_EQ(route_hash(a), route_hash(b));
  EXPECT_EQ(route_signature(canonical_route(b)), route_signature(a));
  EXPECT_NE(route_hash(a), route_hash(make_step("T", { leaf("A"), leaf("C") })));
  EXPECT_EQ(route_hash(a).size(), 64u);
}

TEST(Route, Loops) {
  EXPECT_FALSE(route_has_loop(sample_route()));
  EXPECT_TRUE(route_has_loop(make_step("A", { make_step("B", { leaf("A") }) })));
  // Repeats on different branches are not loops.
  EXPECT_FALSE(route_has_loop(make_step("A", { make_step("B", { leaf("C") }), leaf("C") })));
}

TEST(Route, Subroutes) {
  const RouteNode big = make_step(
      "T", { make_step("I", { make_step("J", { leaf("x") }), leaf("y") }), leaf("z") });
  const RouteNode lower = make_step("I", { make_step("J", { leaf("x") }), leaf("y") });
  const RouteNode upper = make_step("T", { make_step("I", { leaf("J"), leaf("y") }), leaf("z") });
  const RouteNode other = make_step("I", { leaf("J"), leaf("w") });
  EXPECT_TRUE(is_subroute(lower, big));
  EXPECT_TRUE(is_subroute(upper, big));
  EXPECT_TRUE(is_subroute(big, big));
  EXPECT_FALSE(is_subroute(big, lower));
  EXPECT_FALSE(is_subroute(other, big));
}

TEST(Route, FromSteps) {
  const std::vector<ReactionStep> steps {
    { "T", { "A", "B" }, "t1", "h1" },
    { "B", { "C" }, "t2", "h2" },
  };
  StockSet stock;
  stock.add_canonical("A");
  stock.add_canonical("C");
  const RouteNode r = route_from_steps("T", steps, &stock);
  EXPECT_EQ(route_steps(r), 2);
  EXPECT_TRUE(route_solved(r));
  EXPECT_EQ(r.reactions[0].template_hash, "h1");
  EXPECT_THROW(route_from_steps("T", { { "Q", { "A" }, "", "" } }), std::invalid_argument);
}

TEST(Route, Dot) {
  const std::string dot = route_to_dot(sample_route());
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find("Nc1ccccc1"), std::string::npos);
}

}  // namespace
}  // namespace retro
