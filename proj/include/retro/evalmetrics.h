//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_EVALMETRICS_H_
#define RETRO_EVALMETRICS_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "retro/route.h"

namespace retro {

inline constexpr double kStepCost = 1.0;
inline constexpr double kStepYield = 0.8;

// cost(m) = eps + sum over reactants m' of cost(m') / yld; leaves cost 0.
// Throws std::invalid_argument unless 0 < yld <= 1.
double route_cost(const RouteNode &route, double eps = kStepCost,
                  double yld = kStepYield);

// Molecule-only tree: reaction nodes contracted, children ordered by label
// (then by subtree text).
struct LabeledTree {
  std::string label;
  std::vector<LabeledTree> children;

  int size() const;
  std::string text() const;
};

LabeledTree molecule_tree(const RouteNode &route);
// Sorts children recursively.
LabeledTree canonical_tree(LabeledTree t);

// Zhang-Shasha ordered tree edit distance, unit costs.
int tree_edit_distance(const LabeledTree &a, const LabeledTree &b);
// On the canonical molecule trees.
int tree_edit_distance(const RouteNode &a, const RouteNode &b);

// Outcomes of one proposed template, in site order. Each outcome is a list of
// reactant SMILES; unparseable outcomes are dropped.
struct TemplateOutcomes {
  std::vector<std::vector<std::string>> sets;
};

struct SingleStepCase {
  std::vector<TemplateOutcomes> ranked;  // by template rank
  std::vector<std::string> ground_truth;
};

enum class Placement {
  kPessimistic,  // ground truth last among its template's outcomes
  kOptimistic,   // ground truth first
};

struct TopKResult {
  // accuracy[k - 1] for k = 1..kmax
  std::vector<double> accuracy;
  // 1-based rank of the ground truth per case
  std::vector<std::optional<int>> ranks;
  int invalid = 0;
  int duplicates = 0;
};

// Dot-joined sorted canonical SMILES, or nullopt if any part fails to parse.
std::optional<std::string> reactant_set_key(const std::vector<std::string> &smiles);

TopKResult topk_single_step(const std::vector<SingleStepCase> &cases, int kmax,
                            Placement placement = Placement::kPessimistic);

// accuracy[k - 1] = fraction of cases with a route at edit distance 0 among the
// first k.
TopKResult route_accuracy(const std::vector<std::vector<RouteNode>> &predicted,
                          const std::vector<RouteNode> &ground_truth, int kmax);

double solve_rate(const std::vector<bool> &solved);

std::vector<double> accuracy_from_ranks(const std::vector<std::optional<int>> &ranks,
                                        int kmax);

class MissingStratumMetadata: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Stratum { kTemplateFrequency, kRouteLength };

struct TargetOutcome {
  std::string id;
  std::optional<int> rank;  // 1-based rank of the ground truth
  bool solved = false;
  std::optional<int> template_frequency;
  std::optional<int> ground_truth_length;
  std::optional<int> predicted_length;
};

struct ReportBucket {
  std::string label;
  int n = 0;
  std::vector<double> accuracy;     // empty when n == 0
  std::optional<double> solve_rate; // nullopt when n == 0
};

struct EvalReport {
  std::string stratum;
  int kmax = 0;
  int n = 0;
  std::vector<double> accuracy;
  double solve_rate = 0.0;
  std::vector<ReportBucket> buckets;
  // predicted minus ground-truth route length -> count
  std::map<int, int> length_difference;
  int invalid = 0;
  int duplicates = 0;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
  std::string to_csv() const;
};

// Lower edges of the template frequency buckets; the last bucket is open.
std::vector<int> default_frequency_edges();

// Global metrics only; no buckets.
EvalReport summary_report(const std::vector<TargetOutcome> &results, int kmax);

// Throws MissingStratumMetadata when a target lacks the stratum's field.
EvalReport stratified_report(const std::vector<TargetOutcome> &results,
                             Stratum stratum, int kmax,
                             const std::vector<int> &frequency_edges
                             = default_frequency_edges());

}  // namespace retro

#endif  // RETRO_EVALMETRICS_H_
