//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_ROUTE_H_
#define RETRO_ROUTE_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "retro/stock.h"

namespace retro {

struct RouteNode;

struct RouteReaction {
  std::string template_smarts;
  std::string template_hash;
  std::vector<RouteNode> children;
};

// Molecule node; `reactions` holds at most one entry in a route.
struct RouteNode {
  std::string smiles;
  bool in_stock = false;
  std::vector<RouteReaction> reactions;

  bool is_leaf() const noexcept { return reactions.empty(); }
};

using RouteTree = RouteNode;

// Number of reaction nodes.
int route_steps(const RouteNode &route);
// Every leaf in stock.
bool route_solved(const RouteNode &route);
std::vector<std::string> route_leaves(const RouteNode &route);
// Largest leaf by heavy atom count (0 for an empty label set).
int largest_leaf_atoms(const RouteNode &route);
void mark_in_stock(RouteNode &route, const StockSet &stock);

// Order-independent molecule-level signature and its hex SHA-256.
std::string route_signature(const RouteNode &route);
std::string route_hash(const RouteNode &route);

// Children of every reaction sorted by signature.
RouteNode canonical_route(const RouteNode &route);

// Every label replaced by its canonical SMILES. Throws std::invalid_argument
// for an unparseable label.
RouteNode canonicalize_labels(const RouteNode &route);

// Some molecule occurs on its own ancestor path.
bool route_has_loop(const RouteNode &route);

// `small` occurs inside `big`: rooted at some node of `big`, with every
// reaction of `small` present in `big` (leaves of `small` may be expanded in
// `big`).
bool is_subroute(const RouteNode &small, const RouteNode &big);

struct ReactionStep {
  std::string product;
  std::vector<std::string> reactants;
  std::string template_smarts;
  std::string template_hash;
};

// Applies steps in order, each expanding the first unexpanded leaf (preorder)
// labelled with its product. Throws std::invalid_argument when a product has
// no open leaf.
RouteNode route_from_steps(const std::string &target,
                           const std::vector<ReactionStep> &steps,
                           const StockSet *stock = nullptr);

// {"smiles", "in_stock", "children": [{"template", "nodes": [...]}]}
nlohmann::ordered_json route_to_json(const RouteNode &route);
// Throws std::invalid_argument on schema errors.
RouteNode route_from_json(const nlohmann::json &j);

std::string route_to_dot(const RouteNode &route);

}  // namespace retro

#endif  // RETRO_ROUTE_H_
