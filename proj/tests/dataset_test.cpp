//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "retro/dataset.h"
#include "retro/log.h"
#include "retro/smiles.h"
#include "test_support.h"

namespace retro {
namespace {

using testing::fixture_path;
using testing::read_jsonl;
using testing::slurp;

ReactionRecord record(const std::string &id, const std::string &rxn) {
  return ReactionRecord::from_json({ { "id", id }, { "rxn_smiles", rxn } });
}

TEST(Filter, SuiteMatchesRuleTable) {
  int cases = 0;
  std::set<std::string> rules_with_fail, rules_with_pass;
  for (const auto &j: read_jsonl(fixture_path("filter_suite.jsonl"))) {
    ++cases;
    const FilterResult r = filter_reaction(record(j["id"], j["rxn_smiles"]));
    std::vector<std::string> failed;
    for (FilterRule rule: r.report.failed())
      failed.push_back(filter_rule_name(rule));
    std::vector<std::string> expected = j["expected_failures"];
    std::sort(failed.begin(), failed.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(failed, expected) << j["id"];
    EXPECT_EQ(r.accept, j["expected_accept"].get<bool>()) << j["id"];
    EXPECT_EQ(r.accept, r.report.accepted());
    (expected.empty() ? rules_with_pass : rules_with_fail).insert(j["rule"]);
  }
  EXPECT_EQ(cases, 22);
  EXPECT_EQ(rules_with_pass.size(), 11u);
  EXPECT_EQ(rules_with_fail.size(), 11u);
  for (FilterRule rule: all_filter_rules())
    EXPECT_TRUE(rules_with_fail.contains(filter_rule_name(rule)));
}

TEST(Filter, Examples) {
  // Four contributing reactants.
  const FilterResult four = filter_reaction(record(
      "four", "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][OH:6].[CH3:7][CH2:8][CH2:9][CH2:10]"
              "[CH2:11][CH2:12][Br:13].[CH3:14][OH:15].[CH3:16][Br:17]>>[CH3:1][CH2:2]"
              "[CH2:3][CH2:4][CH2:5][O:6][CH2:12][CH2:11][CH2:10][CH2:9][CH2:8][CH3:7]."
              "[CH3:14][O:15][CH3:16]"));
  EXPECT_FALSE(four.report.passed_rule(FilterRule::kMaxReactants));
  EXPECT_FALSE(four.accept);

  // A single eight-atom reactant.
  const FilterResult small = filter_reaction(record(
      "small", "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][OH:8]>>[CH3:1][CH2:2]"
               "[CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][Br:8]"));
  EXPECT_FALSE(small.report.passed_rule(FilterRule::kReactantAtomRange));
  EXPECT_FALSE(small.accept);

  // Product copied among the reactants.
  const std::string p = "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][CH2:8][CH2:9][OH:10]";
  const FilterResult copy = filter_reaction(record("copy", p + "." + p + ">>" + p));
  EXPECT_FALSE(copy.report.passed_rule(FilterRule::kProductNotInReactants));
  EXPECT_FALSE(copy.accept);
}

TEST(Filter, RemovesNonContributingReactants) {
  const FilterResult r = filter_reaction(record(
      "spectator",
      "[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][CH2:8][CH2:9][OH:10]."
      "CCCCCCCCCCCC>>[CH3:1][CH2:2][CH2:3][CH2:4][CH2:5][CH2:6][CH2:7][CH2:8][CH2:9][Br:10]"));
  EXPECT_EQ(r.report.removed_reactants, std::vector<int> { 1 });
  EXPECT_EQ(r.modified.reaction.reactants.size(), 1u);
  EXPECT_TRUE(r.report.passed_rule(FilterRule::kContributingReactants));
}

TEST(Filter, OrphanAndCommonAtomCounts) {
  const MappedReaction rxn = parse_reaction_smiles("[CH3:1][OH:2].[Cl:9]>>[CH3:1][Cl:3]");
  EXPECT_EQ(orphan_atom_count(rxn), 3);  // maps 2, 9 and 3
  const MappedReaction grow = parse_reaction_smiles("[CH3:1]CCO>>[CH3:1]CCN");
  EXPECT_EQ(unmapped_common_atoms(grow), 2);
}

TEST(Reactions, JsonlParsingReportsBadLines) {
  const std::string text = R"({"id":"a","rxn_smiles":"[CH3:1][OH:2]>>[CH3:1][Cl:2]"}
not json
{"id":"b"}
{"id":"c","patent_id":"P9","rxn_smiles":"CCO>>CC=O"}
{"id":"d","rxn_smiles":"C(C>>CC"}
)";
  std::vector<LineIssue> issues;
  const auto recs = parse_reactions(text, &issues);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].id, "a");
  EXPECT_EQ(recs[1].patent_id, "P9");
  ASSERT_EQ(issues.size(), 3u);
  EXPECT_EQ(issues[0].line, 2);
  EXPECT_EQ(issues[1].line, 3);
  EXPECT_EQ(issues[2].line, 5);
  const auto again = parse_reactions(reactions_to_jsonl(recs));
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(reaction_hash(again[0].reaction), reaction_hash(recs[0].reaction));
  EXPECT_THROW(load_reactions("/nonexistent/file.jsonl"), DatasetError);
}

TEST(Reactions, HashIgnoresMapsAndOrder) {
  const auto a = parse_reaction_smiles("[CH3:1][OH:2].[ClH:3]>>[CH3:1][Cl:3]");
  const auto b = parse_reaction_smiles("Cl.OC>>ClC");
  EXPECT_EQ(reaction_hash(a), reaction_hash(b));
  EXPECT_NE(reaction_hash(a), reaction_hash(parse_reaction_smiles("Cl.OCC>>ClCC")));
}

std::vector<ReactionRecord> fixture_records() {
  std::vector<ReactionRecord> out;
  for (const char *f: { "reactions.jsonl", "bench_reactions.jsonl" })
    for (const auto &j: read_jsonl(fixture_path(f)))
      out.push_back(record(j["id"], j["rxn_smiles"]));
  return out;
}

void expect_partition(const std::vector<ReactionRecord> &all,
                      const std::vector<ReactionRecord> &a,
                      const std::vector<ReactionRecord> &b) {
  EXPECT_EQ(a.size() + b.size(), all.size());
  std::multiset<std::string> ids;
  for (const auto &r: a)
    ids.insert(r.id);
  for (const auto &r: b)
    ids.insert(r.id);
  std::multiset<std::string> want;
  for (const auto &r: all)
    want.insert(r.id);
  EXPECT_EQ(ids, want);
  std::set<std::string> ha;
  for (const auto &r: a)
    ha.insert(reaction_hash(r.reaction));
  for (const auto &r: b)
    EXPECT_FALSE(ha.contains(reaction_hash(r.reaction)));
}

TEST(Splits, HardSplitIsPartitionAndTakesUnseen) {
  const auto all = fixture_records();
  TemplateLibrary lib;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (i % 3 != 0)
      lib.add(extract_template(all[i].reaction), static_cast<int>(i % 7) + 1);
  const auto [train, hard] = build_hard_split(all, lib, 1);
  expect_partition(all, train, hard);
  std::set<std::string> hard_ids;
  for (const auto &r: hard)
    hard_ids.insert(r.id);
  for (const auto &r: all) {
    const int count = lib.lookup(extract_template(r.reaction)).value_or(0);
    EXPECT_EQ(hard_ids.contains(r.id), count <= 1) << r.id;
  }
}

TEST(Splits, HardSetHoldsRarerTemplates) {
  const auto all = fixture_records();
  TemplateLibrary lib;
  for (const auto &r: all)
    lib.add(extract_template(r.reaction));
  const auto [train, hard] = build_hard_split(all, lib, 2);
  ASSERT_FALSE(train.empty());
  ASSERT_FALSE(hard.empty());
  auto cdf = [&](const std::vector<ReactionRecord> &rs, int x) {
    int n = 0;
    for (const auto &r: rs)
      n += lib.lookup(extract_template(r.reaction)).value_or(0) <= x ? 1 : 0;
    return static_cast<double>(n) / rs.size();
  };
  for (int x = 0; x <= 20; ++x)
    EXPECT_GE(cdf(hard, x), cdf(train, x)) << x;
}

TEST(Splits, MolWeight) {
  const std::vector<ReactionRecord> rs {
    record("benzene", "C1=CC=CC1.C#C>>c1ccccc1"),
    // C38H74O2 (~563 Da)
    record("heavy", "CCCCCCCCCCCCCCCCCCCC(=O)O.CCCCCCCCCCCCCCCCCCO>>"
                    "CCCCCCCCCCCCCCCCCCCC(=O)OCCCCCCCCCCCCCCCCCC"),
  };
  const auto [train, ood] = split_by_molweight(rs);
  ASSERT_EQ(train.size(), 1u);
  EXPECT_EQ(train[0].id, "benzene");
  ASSERT_EQ(ood.size(), 1u);
  EXPECT_EQ(ood[0].id, "heavy");
  const auto [none, everything] = split_by_molweight(rs, 0.0);
  EXPECT_TRUE(none.empty());
  EXPECT_EQ(everything.size(), 2u);
  const auto all = fixture_records();
  const auto [a, b] = split_by_molweight(all, 250.0);
  expect_partition(all, a, b);
}

TEST(Routes, ChainOfTwoGivesOneRoute) {
  const std::vector<ReactionRecord> rs {
    ReactionRecord::from_json({ { "id", "1" }, { "patent_id", "X" },
                                { "rxn_smiles", "CCCO>>CCC=O" } }),
    ReactionRecord::from_json({ { "id", "2" }, { "patent_id", "X" },
                                { "rxn_smiles", "CCC=O.CN>>CCCNC" } }),
  };
  RouteBuildStats st;
  const auto routes = build_routes(rs, &st);
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_EQ(route_steps(routes[0]), 2);
  EXPECT_EQ(routes[0].smiles, canonical_smiles("CCCNC"));
}

TEST(Routes, PatentCorpus) {
  const auto recs = load_reactions(fixture_path("patent_corpus.jsonl"));
  const auto expected = nlohmann::json::parse(slurp(fixture_path("patent_expected.json")));
  std::set<std::string> patents;
  for (const auto &r: recs)
    patents.insert(*r.patent_id);
  EXPECT_EQ(static_cast<int>(patents.size()), expected["patents"].get<int>());

  RouteBuildStats st;
  const auto routes = build_routes(recs, &st);
  EXPECT_EQ(static_cast<int>(routes.size()), expected["retained"].get<int>());
  EXPECT_EQ(st.single_step, expected["single_step"].get<int>());
  EXPECT_EQ(st.duplicates, expected["duplicates"].get<int>());
  EXPECT_EQ(st.loops, expected["loops"].get<int>());
  EXPECT_EQ(st.subroutes, expected["subroutes"].get<int>());

  std::set<std::string> hashes;
  for (std::size_t i = 0; i < routes.size(); ++i) {
    EXPECT_GE(route_steps(routes[i]), 2);
    EXPECT_FALSE(route_has_loop(routes[i]));
    EXPECT_TRUE(hashes.insert(route_hash(routes[i])).second);
    for (std::size_t j = 0; j < routes.size(); ++j)
      if (i != j)
        EXPECT_FALSE(is_subroute(routes[i], routes[j])) << i << " in " << j;
  }
  // Deterministic.
  const auto again = build_routes(recs);
  ASSERT_EQ(again.size(), routes.size());
  for (std::size_t i = 0; i < routes.size(); ++i)
    EXPECT_EQ(route_hash(again[i]), route_hash(routes[i]));
}

TEST(Stock, CanonicalDedup) {
  EXPECT_EQ(parse_stock("CCO\nOCC\n").size(), 1u);
  std::vector<LineIssue> issues;
  const StockSet s = parse_stock("CCO\nC(C\n\nc1ccccc1 benzene\n", &issues);
  EXPECT_EQ(s.size(), 2u);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].line, 2);
  EXPECT_TRUE(s.contains_canonical(canonical_smiles("c1ccccc1")));
}

TEST(Stock, EmptyFileWarns) {
  const std::string dir = testing::scratch_dir("stock_empty");
  const std::string path = dir + "/empty.txt";
  std::ofstream(path).close();
  const log::Level before = log::level();
  log::set_level(log::Level::kWarning);
  ::testing::internal::CaptureStderr();
  const StockSet s = load_stock(path);
  const std::string err = ::testing::internal::GetCapturedStderr();
  log::set_level(before);
  EXPECT_TRUE(s.empty());
  EXPECT_NE(err.find("empty"), std::string::npos);
  try {
    load_stock(dir + "/missing.txt");
    FAIL();
  } catch (const DatasetError &e) {
    EXPECT_EQ(e.kind(), DatasetError::Kind::kFileUnreadable);
  }
}

TEST(Stock, ReferenceSizes) {
  EXPECT_EQ(reference_stock::kN1, 13432);
  EXPECT_EQ(reference_stock::kN5, 13326);
}

}  // namespace
}  // namespace retro
