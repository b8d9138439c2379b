//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_SEARCH_H_
#define RETRO_SEARCH_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "retro/policy.h"
#include "retro/route.h"
#include "retro/stock.h"

namespace retro {

struct SearchConfig {
  double c_pucb = 100.0;
  double temperature = 3.0;
  int expansions = 10;
  int max_iterations = 500;
  double time_limit_s = 300.0;
  double q_init = 0.5;
  bool strict = false;
  const TemplateLibrary *library = nullptr;

  // Throws std::invalid_argument unless every limit is positive.
  void validate() const;
};

// Q + c * prior * sqrt(parent_visits) / (1 + visits)
double puct_score(double value, double prior, int parent_visits, int visits,
                  double c_pucb);

// Running-mean update: value <- (reward + value * visits) / (visits + 1),
// visits <- visits + 1.
void update_value(double &value, int &visits, double reward);

struct SearchNode {
  // Open (not purchasable) molecules, canonical and sorted.
  std::vector<std::string> mols;
  int visits = 0;
  double value = 0.5;
  double prior = 1.0;
  int parent = -1;
  std::vector<int> children;
  bool expanded = false;
  // Some node in this subtree has no open molecules.
  bool subtree_solved = false;

  // Reaction leading here from the parent.
  std::string product;
  std::vector<std::string> reactants;
  std::string template_smarts;
  std::string template_hash;

  bool solved() const noexcept { return mols.empty(); }
};

// Child of `parent` with the highest P-UCB score; the earliest created child
// wins ties. -1 when there are no children.
int select_child(const std::vector<SearchNode> &nodes, int parent, double c_pucb);

// Walks from `leaf` to the root, updating each node with reward 1 when its
// subtree holds a solved node and 0 otherwise.
void backpropagate(std::vector<SearchNode> &nodes, int leaf);

struct SearchStats {
  bool solved = false;
  std::optional<int> first_solution_iter;
  std::optional<double> first_solution_time_s;
  int iterations = 0;
  int nodes = 0;
  int policy_calls = 0;
  int rewrite_conflicts = 0;

  nlohmann::ordered_json to_json() const;
};

struct SearchResult {
  std::string target;
  std::vector<SearchNode> nodes;  // nodes[0] is the root
  SearchStats stats;
};

// P-UCB tree search over molecule-set nodes. Expansion proposes up to
// cfg.expansions templates for the open molecule with the most heavy atoms;
// a template matching several sites splits its prior equally among them.
// BackendUnavailable propagates.
SearchResult run_search(const Molecule &target, const PolicyBackend &backend,
                        const StockSet &stock, const SearchConfig &cfg);

// Solved routes, deduplicated by route hash, ranked by ascending route cost
// (ties keep discovery order) and truncated.
std::vector<RouteTree> extract_routes(const SearchResult &result,
                                      const StockSet &stock, int max_routes);

}  // namespace retro

#endif  // RETRO_SEARCH_H_
