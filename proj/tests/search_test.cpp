//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <mutex>
#include <random>

#include <gtest/gtest.h>

#include "retro/evalmetrics.h"
#include "retro/search.h"
#include "retro/smiles.h"
#include "test_support.h"

namespace retro {
namespace {

using testing::fixture_path;
using testing::read_jsonl;
using testing::read_lines;

const testing::Benchmark &load_bench() { return testing::benchmark(); }

// Records every request size and forwards to a wrapped backend.
class CountingBackend: public PolicyBackend {
public:
  explicit CountingBackend(const PolicyBackend &inner): inner_(inner) { }
  std::string name() const override { return "counting"; }
  std::vector<RawProposal> raw_proposals(
      const Molecule &m, int k, const std::optional<std::string> &c) const override {
    std::lock_guard<std::mutex> lock(mu_);
    ks.push_back(k);
    return inner_.raw_proposals(m, k, c);
  }
  mutable std::vector<int> ks;

private:
  const PolicyBackend &inner_;
  mutable std::mutex mu_;
};

TEST(SearchConfig, PublishedDefaults) {
  const SearchConfig cfg;
  EXPECT_EQ(cfg.c_pucb, 100.0);
  EXPECT_EQ(cfg.temperature, 3.0);
  EXPECT_EQ(cfg.expansions, 10);
  EXPECT_EQ(cfg.max_iterations, 500);
  EXPECT_EQ(cfg.time_limit_s, 300.0);
  EXPECT_EQ(cfg.q_init, 0.5);
  EXPECT_FALSE(cfg.strict);
  EXPECT_NO_THROW(cfg.validate());
  SearchConfig bad;
  bad.expansions = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = SearchConfig {};
  bad.temperature = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Puct, Examples) {
  EXPECT_DOUBLE_EQ(puct_score(0.5, 0.2, 4, 0, 100.0), 40.5);
  EXPECT_DOUBLE_EQ(puct_score(0.3, 0.0, 9, 2, 100.0), 0.3);
  double prev = puct_score(0.5, 0.2, 4, 0, 100.0);
  for (int n = 1; n < 2000; ++n) {
    const double s = puct_score(0.5, 0.2, 4, n, 100.0);
    EXPECT_LT(s, prev);
    EXPECT_GT(s, 0.5);
    prev = s;
  }
  EXPECT_NEAR(puct_score(0.5, 0.2, 4, 100000000, 100.0), 0.5, 1e-5);
}

TEST(Puct, ClosedFormOnRandomTuples) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> q(0, 1), pi(0, 1), c(0, 200);
  std::uniform_int_distribution<int> n(0, 10000);
  for (int i = 0; i < 1000; ++i) {
    const double qv = q(rng), pv = pi(rng), cv = c(rng);
    const int np = n(rng), ns = n(rng);
    EXPECT_NEAR(puct_score(qv, pv, np, ns, cv), qv + cv * pv * std::sqrt(np) / (1.0 + ns),
                1e-12);
  }
}

TEST(ValueUpdate, Examples) {
  double q = 0.5;
  int n = 1;
  update_value(q, n, 1.0);
  EXPECT_DOUBLE_EQ(q, 0.75);
  EXPECT_EQ(n, 2);
  q = 0.5;
  n = 1;
  update_value(q, n, 0.0);
  EXPECT_DOUBLE_EQ(q, 0.25);
  EXPECT_EQ(n, 2);
  q = 0.5;
  n = 0;
  double prev = q;
  for (int i = 0; i < 200; ++i) {
    update_value(q, n, 1.0);
    EXPECT_GE(q, prev);
    prev = q;
  }
  EXPECT_NEAR(q, 1.0, 1e-12);
}

TEST(Backpropagate, PathRewardsAndBounds) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<SearchNode> nodes(1);
    const int n = std::uniform_int_distribution<int>(2, 30)(rng);
    for (int i = 1; i < n; ++i) {
      SearchNode s;
      s.parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
      s.value = std::uniform_real_distribution<double>(0, 1)(rng);
      s.visits = std::uniform_int_distribution<int>(0, 5)(rng);
      nodes[s.parent].children.push_back(i);
      nodes.push_back(s);
    }
    for (int step = 0; step < 50; ++step) {
      const int leaf = std::uniform_int_distribution<int>(0, n - 1)(rng);
      if (rng() % 4 == 0)
        for (int a = leaf; a >= 0; a = nodes[a].parent)
          nodes[a].subtree_solved = true;
      std::vector<SearchNode> expect = nodes;
      for (int a = leaf; a >= 0; a = expect[a].parent) {
        const double r = expect[a].subtree_solved ? 1.0 : 0.0;
        expect[a].value = (r + expect[a].value * expect[a].visits) / (expect[a].visits + 1);
        expect[a].visits += 1;
      }
      backpropagate(nodes, leaf);
      for (int i = 0; i < n; ++i) {
        EXPECT_NEAR(nodes[i].value, expect[i].value, 1e-12);
        EXPECT_EQ(nodes[i].visits, expect[i].visits);
        EXPECT_GE(nodes[i].value, 0.0);
        EXPECT_LE(nodes[i].value, 1.0);
      }
    }
  }
}

TEST(Selection, MaximizesScoreFirstOnTies) {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<SearchNode> nodes(1);
    nodes[0].visits = std::uniform_int_distribution<int>(0, 50)(rng);
    const int k = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int i = 0; i < k; ++i) {
      SearchNode s;
      s.parent = 0;
      // Coarse values so ties occur.
      s.value = std::uniform_int_distribution<int>(0, 2)(rng) * 0.25;
      s.prior = std::uniform_int_distribution<int>(0, 2)(rng) * 0.25;
      s.visits = std::uniform_int_distribution<int>(0, 2)(rng);
      nodes[0].children.push_back(static_cast<int>(nodes.size()));
      nodes.push_back(s);
    }
    int want = -1;
    double best = -1;
    for (int c: nodes[0].children) {
      const double s = nodes[c].value
                       + 100.0 * nodes[c].prior * std::sqrt(nodes[0].visits)
                             / (1.0 + nodes[c].visits);
      if (s > best) {
        best = s;
        want = c;
      }
    }
    EXPECT_EQ(select_child(nodes, 0, 100.0), want);
  }
  std::vector<SearchNode> lone(1);
  EXPECT_EQ(select_child(lone, 0, 100.0), -1);
}

TEST(Search, TargetInStockSolvedImmediately) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(b.table);
  const std::string s = b.stock.sorted().front();
  const SearchResult r = run_search(parse_smiles(s), table, b.stock, SearchConfig {});
  EXPECT_TRUE(r.stats.solved);
  EXPECT_EQ(r.stats.first_solution_iter, 0);
  EXPECT_EQ(r.stats.iterations, 0);
  const auto routes = extract_routes(r, b.stock, 10);
  ASSERT_EQ(routes.size(), 1u);
  EXPECT_EQ(route_steps(routes[0]), 0);
}

TEST(Search, RecoversBenchmarkRoutes) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(b.table);
  SearchConfig cfg;
  cfg.max_iterations = 50;
  for (const auto &[id, smi]: b.targets) {
    const SearchResult r = run_search(parse_smiles(smi), table, b.stock, cfg);
    ASSERT_TRUE(r.stats.solved) << id;
    ASSERT_TRUE(r.stats.first_solution_iter.has_value());
    EXPECT_LE(*r.stats.first_solution_iter, 50);
    const auto routes = extract_routes(r, b.stock, 10);
    ASSERT_FALSE(routes.empty());
    EXPECT_EQ(tree_edit_distance(routes[0], b.truth.at(id)), 0) << id;
    for (const RouteTree &route: routes)
      EXPECT_TRUE(route_solved(route));
  }
}

TEST(Search, ExpansionRequestsAtMostExpansions) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(b.table, { false, 10, 400 });
  const CountingBackend counting(table);
  SearchConfig cfg;
  cfg.max_iterations = 40;
  cfg.expansions = 3;
  for (const auto &[id, smi]: b.targets) {
    const SearchResult r = run_search(parse_smiles(smi), counting, b.stock, cfg);
    for (const SearchNode &n: r.nodes) {
      if (!n.expanded)
        continue;
      std::set<std::string> hashes;
      for (int c: n.children)
        hashes.insert(r.nodes[c].template_hash);
      EXPECT_LE(hashes.size(), 3u);
    }
  }
  ASSERT_FALSE(counting.ks.empty());
  for (int k: counting.ks)
    EXPECT_EQ(k, 3);
}

TEST(Search, SolvedFlagMatchesExtractedRoutes) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(b.table);
  SearchConfig cfg;
  cfg.max_iterations = 20;
  // Half the stock removed: some targets become unsolvable.
  StockSet half;
  const auto all = b.stock.sorted();
  for (std::size_t i = 0; i < all.size(); i += 2)
    half.add_canonical(all[i]);
  for (const auto &[id, smi]: b.targets) {
    const SearchResult r = run_search(parse_smiles(smi), table, half, cfg);
    const auto routes = extract_routes(r, half, 10);
    bool any = false;
    for (const RouteTree &route: routes)
      any = any || route_solved(route);
    EXPECT_EQ(r.stats.solved, any) << id;
    if (!r.stats.solved)
      EXPECT_TRUE(routes.empty());
  }
}

TEST(Search, InapplicableTemplatesLeaveTargetUnsolved) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(std::vector<TableEntry> { { "CCCCCCCCCCO", "[C:1][OH:2]>>[C:1]Br.[OH2:2]" } });
  SearchConfig cfg;
  cfg.max_iterations = 30;
  const SearchResult r = run_search(parse_smiles(b.targets[0].second), table, b.stock, cfg);
  EXPECT_FALSE(r.stats.solved);
  EXPECT_FALSE(r.stats.first_solution_iter.has_value());
  EXPECT_TRUE(extract_routes(r, b.stock, 10).empty());
}

TEST(Search, Deterministic) {
  const testing::Benchmark &b = load_bench();
  const TablePolicy table(b.table);
  SearchConfig cfg;
  cfg.max_iterations = 60;
  for (const auto &[id, smi]: b.targets) {
    const SearchResult x = run_search(parse_smiles(smi), table, b.stock, cfg);
    const SearchResult y = run_search(parse_smiles(smi), table, b.stock, cfg);
    ASSERT_EQ(x.nodes.size(), y.nodes.size());
    for (std::size_t i = 0; i < x.nodes.size(); ++i) {
      EXPECT_EQ(x.nodes[i].mols, y.nodes[i].mols);
      EXPECT_EQ(x.nodes[i].visits, y.nodes[i].visits);
      EXPECT_EQ(x.nodes[i].value, y.nodes[i].value);
    }
  }
}

TEST(Search, PriorSplitAcrossSites) {
  // One template matching both hydroxyls of a diol: each child gets half.
  const TablePolicy table(std::vector<TableEntry> { { "OCCCCCCCCCO", "[C:1][OH:2]>>[C:1]Br.[OH2:2]" } });
  StockSet stock;
  const SearchResult r = run_search(parse_smiles("OCCCCCCCCCO"), table, stock,
                                    [] {
                                      SearchConfig c;
                                      c.max_iterations = 1;
                                      return c;
                                    }());
  ASSERT_EQ(r.nodes[0].children.size(), 2u);
  for (int c: r.nodes[0].children)
    EXPECT_DOUBLE_EQ(r.nodes[c].prior, 0.5);
}

TEST(ExtractRoutes, RankedByCostAndDeduplicated) {
  // Target T makes a one-step route via A+B and a two-step route via I.
  SearchResult r;
  r.target = canonical_smiles("CCCCCCCCOC(C)=O");
  StockSet stock;
  for (const char *s: { "CCCCCCCCO", "CC(=O)O", "CCCCCCCCBr" })
    stock.add(s);
  SearchNode root;
  root.mols = { r.target };
  r.nodes.push_back(root);
  auto child = [&](int parent, std::vector<std::string> mols, const std::string &product,
                   std::vector<std::string> reactants) {
    SearchNode n;
    n.parent = parent;
    n.mols = std::move(mols);
    n.product = product;
    n.reactants = std::move(reactants);
    r.nodes[parent].children.push_back(static_cast<int>(r.nodes.size()));
    r.nodes.push_back(n);
    return static_cast<int>(r.nodes.size()) - 1;
  };
  const std::string oct = canonical_smiles("CCCCCCCCO");
  const std::string acid = canonical_smiles("CC(=O)O");
  const std::string brom = canonical_smiles("CCCCCCCCBr");
  const int two = child(0, { oct }, r.target, { oct, acid });
  child(two, {}, oct, { brom });
  child(0, {}, r.target, { oct, acid });
  child(0, {}, r.target, { acid, oct });
  const auto routes = extract_routes(r, stock, 10);
  ASSERT_EQ(routes.size(), 2u);
  EXPECT_DOUBLE_EQ(route_cost(routes[0]), 1.0);
  EXPECT_DOUBLE_EQ(route_cost(routes[1]), 2.25);
  EXPECT_EQ(extract_routes(r, stock, 1).size(), 1u);
}

}  // namespace
}  // namespace retro
