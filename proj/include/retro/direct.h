//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_DIRECT_H_
#define RETRO_DIRECT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "retro/policy.h"
#include "retro/route.h"
#include "retro/stock.h"
#include "retro/template.h"

namespace retro {

// Generated template sequence. Entries that failed to parse are nullopt and
// apply nowhere.
struct TemplateSequence {
  std::vector<std::optional<RetroTemplate>> templates;
  std::vector<std::string> smarts;
  double log_prob = 0;
  std::optional<std::string> condition;

  static TemplateSequence from_sample(const RouteSample &sample,
                                      std::optional<std::string> condition = {});
};

struct MolSetNode {
  std::vector<std::string> mols;  // canonical, sorted
  std::vector<bool> purchasable;  // parallel to mols
  int parent = -1;
  std::vector<int> children;

  // Annotation of the template that produced this node.
  std::optional<int> template_index;
  std::string template_smarts;
  std::string product;
  std::vector<std::string> reactants;
};

struct MolSetGraph {
  std::vector<MolSetNode> nodes;  // nodes[0] holds the target
  bool stock_marked = false;

  std::vector<int> leaves() const;
  // Reaction steps on the path from the root to `node`.
  std::vector<ReactionStep> steps_to(int node) const;
  // One route per leaf with at least one reaction, in node order.
  std::vector<RouteTree> routes(const StockSet *stock = nullptr) const;
  // Reactions on the longest root path.
  int decoded_reactions() const;
};

// Per template: apply it to every non-purchasable molecule of every frontier
// node; each (molecule, reactant set) result becomes a child whose set is
// the parent's with the molecule replaced by the reactants. The frontier moves
// to the new children only when there are some.
MolSetGraph reconstruct_routes(const Molecule &target, const TemplateSequence &seq,
                               const StockSet *stock = nullptr);

enum class DirectVariant { kVanilla, kNStep, kNineStep, kLeafSize };

// Accepts "vanilla", "n-step", "9-step", "leaf-size" and underscore spellings
// ("n_step", "nine_step", "leaf_size"). Throws std::invalid_argument.
DirectVariant parse_direct_variant(std::string_view name);
std::string direct_variant_name(DirectVariant v);

struct ScanRequest {
  std::optional<std::string> condition;
  int n_samples = 0;
};

// vanilla: 50 unconditioned; n-step: STEPS 2..9 x 10; 9-step: STEPS=9 x 50;
// leaf-size: LEAF_ATOMS 10..40 by 5 x 10.
std::vector<ScanRequest> scan_plan(DirectVariant v);
int scan_sample_count(DirectVariant v);

struct DirectRoute {
  RouteTree route;
  double log_prob = 0;
  std::optional<std::string> condition;
  int sample_index = 0;
};

struct ScanStats {
  int requested = 0;
  int received = 0;
  int routes = 0;
};

// Runs the variant's sampling plan and reconstructs every returned sequence.
// Output is ordered by (condition, sample index). With jobs > 1 requests run
// concurrently. BackendUnavailable propagates.
std::vector<DirectRoute> condition_scan(const Molecule &target,
                                        const PolicyBackend &backend,
                                        DirectVariant variant,
                                        const StockSet *stock,
                                        ScanStats *stats = nullptr, int jobs = 1);

struct DirectRouteKey {
  bool solved = false;
  int steps = 0;
  double log_prob = 0;
};

// Solved first, then fewer steps, then higher log-probability.
bool direct_route_before(const DirectRouteKey &a, const DirectRouteKey &b);
DirectRouteKey direct_route_key(const DirectRoute &r);

// Stable sort by direct_route_before.
std::vector<DirectRoute> rank_direct_routes(std::vector<DirectRoute> routes);

// Keeps the first route per route hash.
std::vector<DirectRoute> dedup_direct_routes(std::vector<DirectRoute> routes);

}  // namespace retro

#endif  // RETRO_DIRECT_H_
