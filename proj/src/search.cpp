//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/search.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "retro/evalmetrics.h"
#include "retro/smiles.h"

namespace retro {

void SearchConfig::validate() const {
  if (!(c_pucb > 0) || !(temperature > 0) || expansions < 1 || max_iterations < 1
      || !(time_limit_s > 0) || !(q_init > 0))
    throw std::invalid_argument("search limits and constants must be positive");
}

double puct_score(double value, double prior, int parent_visits, int visits,
                  double c_pucb) {
  return value
         + c_pucb * prior * std::sqrt(static_cast<double>(parent_visits))
               / (1.0 + visits);
}

void update_value(double &value, int &visits, double reward) {
  value = (reward + value * visits) / (visits + 1);
  ++visits;
}

void backpropagate(std::vector<SearchNode> &nodes, int leaf) {
  for (int n = leaf; n >= 0; n = nodes[n].parent)
    update_value(nodes[n].value, nodes[n].visits, nodes[n].subtree_solved ? 1.0 : 0.0);
}

int select_child(const std::vector<SearchNode> &nodes, int parent, double c_pucb) {
  const SearchNode &p = nodes[parent];
  int best = -1;
  double best_score = 0;
  for (int c: p.children) {
    const SearchNode &ch = nodes[c];
    const double s = puct_score(ch.value, ch.prior, p.visits, ch.visits, c_pucb);
    if (best < 0 || s > best_score) {
      best = c;
      best_score = s;
    }
  }
  return best;
}

nlohmann::ordered_json SearchStats::to_json() const {
  nlohmann::ordered_json j;
  j["solved"] = solved;
  j["first_solution_iter"] = first_solution_iter ? nlohmann::ordered_json(*first_solution_iter)
                                                 : nlohmann::ordered_json(nullptr);
  j["first_solution_time_s"] = first_solution_time_s
                                   ? nlohmann::ordered_json(*first_solution_time_s)
                                   : nlohmann::ordered_json(nullptr);
  j["iterations"] = iterations;
  j["nodes"] = nodes;
  return j;
}

namespace {

class Mcts {
public:
  Mcts(const PolicyBackend &backend, const StockSet &stock, const SearchConfig &cfg)
      : backend_(backend), stock_(stock), cfg_(cfg) { }

  SearchResult run(const Molecule &target) {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    auto elapsed = [&] {
      return std::chrono::duration<double>(Clock::now() - start).count();
    };

    res_.target = canonical_smiles(target);
    molecules_.emplace(res_.target, target);
    SearchNode root;
    if (!stock_.contains_canonical(res_.target))
      root.mols.push_back(res_.target);
    root.value = cfg_.q_init;
    root.prior = 1.0;
    res_.nodes.push_back(std::move(root));

    if (res_.nodes[0].solved()) {
      res_.nodes[0].subtree_solved = true;
      res_.stats.first_solution_iter = 0;
      res_.stats.first_solution_time_s = elapsed();
    }

    for (int iter = 1; iter <= cfg_.max_iterations && !res_.nodes[0].solved(); ++iter) {
      if (elapsed() >= cfg_.time_limit_s)
        break;
      int node = 0;
      while (res_.nodes[node].expanded && !res_.nodes[node].children.empty())
        node = select_child(res_.nodes, node, cfg_.c_pucb);
      if (!res_.nodes[node].solved() && !res_.nodes[node].expanded)
        expand(node, iter, elapsed);
      backpropagate(res_.nodes, node);
      res_.stats.iterations = iter;
      if (res_.nodes[0].expanded && res_.nodes[0].children.empty())
        break;  // nothing applies to the target
    }
    res_.stats.solved = res_.nodes[0].subtree_solved;
    res_.stats.nodes = static_cast<int>(res_.nodes.size());
    return std::move(res_);
  }

private:
  const Molecule &molecule(const std::string &smi) {
    auto it = molecules_.find(smi);
    if (it == molecules_.end())
      it = molecules_.emplace(smi, parse_smiles(smi)).first;
    return it->second;
  }

  template <class Elapsed>
  void expand(int node, int iter, Elapsed &elapsed) {
    res_.nodes[node].expanded = true;
    const std::vector<std::string> open = res_.nodes[node].mols;

    std::string pick;
    int pick_atoms = -1;
    for (const std::string &s: open) {
      const int atoms = heavy_atom_count(molecule(s));
      if (atoms > pick_atoms || (atoms == pick_atoms && s < pick)) {
        pick = s;
        pick_atoms = atoms;
      }
    }
    const Molecule &mol = molecule(pick);

    PolicyConfig pc;
    pc.k = cfg_.expansions;
    pc.temperature = cfg_.temperature;
    pc.strict = cfg_.strict;
    pc.library = cfg_.library;
    pc.candidate_pool = cfg_.expansions;
    const std::vector<PolicyProposal> proposals = propose(backend_, mol, pc);
    ++res_.stats.policy_calls;
    if (proposals.empty())
      return;
    const std::vector<double> priors = normalize_priors(proposals, cfg_.temperature);

    for (std::size_t i = 0; i < proposals.size(); ++i) {
      ApplyStats st;
      const std::vector<ReactantSet> sets = apply_template(proposals[i].tmpl, mol, &st);
      res_.stats.rewrite_conflicts += st.conflicts;
      for (const ReactantSet &set: sets) {
        SearchNode child;
        for (const std::string &s: open)
          if (s != pick)
            child.mols.push_back(s);
        for (std::size_t m = 0; m < set.smiles.size(); ++m) {
          molecules_.emplace(set.smiles[m], set.molecules[m]);
          if (!stock_.contains_canonical(set.smiles[m]))
            child.mols.push_back(set.smiles[m]);
        }
        std::sort(child.mols.begin(), child.mols.end());
        child.mols.erase(std::unique(child.mols.begin(), child.mols.end()),
                         child.mols.end());
        child.prior = priors[i] / static_cast<double>(sets.size());
        child.value = cfg_.q_init;
        child.parent = node;
        child.product = pick;
        child.reactants = set.smiles;
        child.template_smarts = proposals[i].tmpl.source_smarts;
        child.template_hash = proposals[i].hash;
        const bool solved = child.solved();
        child.subtree_solved = solved;
        const int idx = static_cast<int>(res_.nodes.size());
        res_.nodes.push_back(std::move(child));
        res_.nodes[node].children.push_back(idx);
        if (solved) {
          for (int a = node; a >= 0; a = res_.nodes[a].parent)
            res_.nodes[a].subtree_solved = true;
          if (!res_.stats.first_solution_iter) {
            res_.stats.first_solution_iter = iter;
            res_.stats.first_solution_time_s = elapsed();
          }
        }
      }
    }
  }

  const PolicyBackend &backend_;
  const StockSet &stock_;
  const SearchConfig &cfg_;
  SearchResult res_;
  std::unordered_map<std::string, Molecule> molecules_;
};

}  // namespace

SearchResult run_search(const Molecule &target, const PolicyBackend &backend,
                        const StockSet &stock, const SearchConfig &cfg) {
  cfg.validate();
  return Mcts(backend, stock, cfg).run(target);
}

std::vector<RouteTree> extract_routes(const SearchResult &result,
                                      const StockSet &stock, int max_routes) {
  std::vector<RouteTree> routes;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < result.nodes.size(); ++i) {
    if (!result.nodes[i].solved())
      continue;
    std::vector<ReactionStep> steps;
    for (int n = static_cast<int>(i); n > 0; n = result.nodes[n].parent) {
      const SearchNode &sn = result.nodes[n];
      steps.push_back({ sn.product, sn.reactants, sn.template_smarts, sn.template_hash });
    }
    std::reverse(steps.begin(), steps.end());
    RouteTree route = route_from_steps(result.target, steps, &stock);
    if (seen.insert(route_hash(route)).second)
      routes.push_back(std::move(route));
  }
  std::vector<double> cost;
  for (const RouteTree &r: routes)
    cost.push_back(route_cost(r));
  std::vector<std::size_t> order(routes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });
  std::vector<RouteTree> out;
  for (std::size_t i = 0; i < order.size() && static_cast<int>(out.size()) < max_routes; ++i)
    out.push_back(std::move(routes[order[i]]));
  return out;
}

}  // namespace retro
