//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/direct.h"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <unordered_set>

#include "retro/smiles.h"
#include "retro/tokenizer.h"

namespace retro {

TemplateSequence TemplateSequence::from_sample(const RouteSample &sample,
                                               std::optional<std::string> condition) {
  TemplateSequence seq;
  seq.log_prob = sample.log_prob;
  seq.condition = std::move(condition);
  for (const std::string &s: sample.templates) {
    seq.smarts.push_back(s);
    try {
      seq.templates.emplace_back(parse_template(s));
    } catch (const std::exception &) {
      seq.templates.emplace_back(std::nullopt);
    }
  }
  return seq;
}

std::vector<int> MolSetGraph::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].children.empty())
      out.push_back(static_cast<int>(i));
  return out;
}

std::vector<ReactionStep> MolSetGraph::steps_to(int node) const {
  std::vector<ReactionStep> steps;
  for (int n = node; n > 0; n = nodes[n].parent) {
    const MolSetNode &sn = nodes[n];
    steps.push_back({ sn.product, sn.reactants, sn.template_smarts,
                      template_hash(sn.template_smarts) });
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::vector<RouteTree> MolSetGraph::routes(const StockSet *stock) const {
  std::vector<RouteTree> out;
  for (int leaf: leaves()) {
    if (leaf == 0)
      continue;
    out.push_back(route_from_steps(nodes[0].mols.front(), steps_to(leaf), stock));
  }
  return out;
}

int MolSetGraph::decoded_reactions() const {
  int best = 0;
  for (int leaf: leaves()) {
    int depth = 0;
    for (int n = leaf; n > 0; n = nodes[n].parent)
      ++depth;
    best = std::max(best, depth);
  }
  return best;
}

namespace {

void mark(MolSetNode &node, const StockSet *stock) {
  node.purchasable.assign(node.mols.size(), false);
  if (stock == nullptr)
    return;
  for (std::size_t i = 0; i < node.mols.size(); ++i)
    node.purchasable[i] = stock->contains_canonical(node.mols[i]);
}

}  // namespace

MolSetGraph reconstruct_routes(const Molecule &target, const TemplateSequence &seq,
                               const StockSet *stock) {
  MolSetGraph g;
  g.stock_marked = stock != nullptr;
  MolSetNode root;
  root.mols.push_back(canonical_smiles(target));
  mark(root, stock);
  g.nodes.push_back(std::move(root));

  std::vector<int> frontier { 0 };
  for (std::size_t i = 0; i < seq.templates.size(); ++i) {
    std::vector<int> advanced;
    if (seq.templates[i]) {
      const RetroTemplate &t = *seq.templates[i];
      for (int n: frontier) {
        const std::vector<std::string> mols = g.nodes[n].mols;
        const std::vector<bool> buyable = g.nodes[n].purchasable;
        for (std::size_t m = 0; m < mols.size(); ++m) {
          if (buyable[m])
            continue;
          const Molecule mol = parse_smiles(mols[m]);
          for (const ReactantSet &set: apply_template(t, mol)) {
            MolSetNode child;
            for (std::size_t o = 0; o < mols.size(); ++o)
              if (o != m)
                child.mols.push_back(mols[o]);
            child.mols.insert(child.mols.end(), set.smiles.begin(), set.smiles.end());
            std::sort(child.mols.begin(), child.mols.end());
            child.mols.erase(std::unique(child.mols.begin(), child.mols.end()),
                             child.mols.end());
            child.parent = n;
            child.template_index = static_cast<int>(i);
            child.template_smarts = seq.smarts.size() > i ? seq.smarts[i]
                                                          : write_template(t);
            child.product = mols[m];
            child.reactants = set.smiles;
            mark(child, stock);
            const int idx = static_cast<int>(g.nodes.size());
            g.nodes.push_back(std::move(child));
            g.nodes[n].children.push_back(idx);
            advanced.push_back(idx);
          }
        }
      }
    }
    if (!advanced.empty())
      frontier = std::move(advanced);
  }
  return g;
}

DirectVariant parse_direct_variant(std::string_view name) {
  if (name == "vanilla")
    return DirectVariant::kVanilla;
  if (name == "n-step" || name == "n_step")
    return DirectVariant::kNStep;
  if (name == "9-step" || name == "nine_step" || name == "nine-step")
    return DirectVariant::kNineStep;
  if (name == "leaf-size" || name == "leaf_size")
    return DirectVariant::kLeafSize;
  throw std::invalid_argument("unknown direct variant '" + std::string(name) + "'");
}

std::string direct_variant_name(DirectVariant v) {
  switch (v) {
  case DirectVariant::kVanilla: return "vanilla";
  case DirectVariant::kNStep: return "n-step";
  case DirectVariant::kNineStep: return "9-step";
  case DirectVariant::kLeafSize: return "leaf-size";
  }
  return "vanilla";
}

std::vector<ScanRequest> scan_plan(DirectVariant v) {
  std::vector<ScanRequest> plan;
  switch (v) {
  case DirectVariant::kVanilla:
    plan.push_back({ std::nullopt, 50 });
    break;
  case DirectVariant::kNStep:
    for (int s = 2; s <= 9; ++s)
      plan.push_back({ steps_condition(s), 10 });
    break;
  case DirectVariant::kNineStep:
    plan.push_back({ steps_condition(9), 50 });
    break;
  case DirectVariant::kLeafSize:
    for (int a = 10; a <= 40; a += 5)
      plan.push_back({ leaf_atoms_condition(a), 10 });
    break;
  }
  return plan;
}

int scan_sample_count(DirectVariant v) {
  int n = 0;
  for (const ScanRequest &r: scan_plan(v))
    n += r.n_samples;
  return n;
}

std::vector<DirectRoute> condition_scan(const Molecule &target,
                                        const PolicyBackend &backend,
                                        DirectVariant variant, const StockSet *stock,
                                        ScanStats *stats, int jobs) {
  const std::vector<ScanRequest> plan = scan_plan(variant);
  auto run_one = [&](const ScanRequest &req) {
    std::vector<DirectRoute> routes;
    const std::vector<RouteSample> samples
        = backend.propose_routes(target, req.n_samples, req.condition);
    const int n = std::min<int>(static_cast<int>(samples.size()), req.n_samples);
    for (int i = 0; i < n; ++i) {
      const TemplateSequence seq = TemplateSequence::from_sample(samples[i], req.condition);
      for (RouteTree &r: reconstruct_routes(target, seq, stock).routes(stock))
        routes.push_back({ std::move(r), seq.log_prob, req.condition, i });
    }
    return std::make_pair(n, std::move(routes));
  };

  std::vector<std::pair<int, std::vector<DirectRoute>>> parts(plan.size());
  if (jobs > 1) {
    for (std::size_t start = 0; start < plan.size(); start += jobs) {
      std::vector<std::future<std::pair<int, std::vector<DirectRoute>>>> futs;
      const std::size_t stop = std::min(plan.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t i = start; i < stop; ++i)
        futs.push_back(std::async(std::launch::async, run_one, std::cref(plan[i])));
      for (std::size_t i = start; i < stop; ++i)
        parts[i] = futs[i - start].get();
    }
  } else {
    for (std::size_t i = 0; i < plan.size(); ++i)
      parts[i] = run_one(plan[i]);
  }

  std::vector<DirectRoute> out;
  ScanStats st;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    st.requested += plan[i].n_samples;
    st.received += parts[i].first;
    for (DirectRoute &r: parts[i].second)
      out.push_back(std::move(r));
  }
  st.routes = static_cast<int>(out.size());
  if (stats != nullptr)
    *stats = st;
  return out;
}

bool direct_route_before(const DirectRouteKey &a, const DirectRouteKey &b) {
  if (a.solved != b.solved)
    return a.solved;
  if (a.steps != b.steps)
    return a.steps < b.steps;
  return a.log_prob > b.log_prob;
}

DirectRouteKey direct_route_key(const DirectRoute &r) {
  return { route_solved(r.route), route_steps(r.route), r.log_prob };
}

std::vector<DirectRoute> rank_direct_routes(std::vector<DirectRoute> routes) {
  std::vector<DirectRouteKey> keys;
  for (const DirectRoute &r: routes)
    keys.push_back(direct_route_key(r));
  std::vector<std::size_t> order(routes.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return direct_route_before(keys[a], keys[b]);
  });
  std::vector<DirectRoute> out;
  out.reserve(routes.size());
  for (std::size_t i: order)
    out.push_back(std::move(routes[i]));
  return out;
}

std::vector<DirectRoute> dedup_direct_routes(std::vector<DirectRoute> routes) {
  std::unordered_set<std::string> seen;
  std::vector<DirectRoute> out;
  for (DirectRoute &r: routes)
    if (seen.insert(route_hash(r.route)).second)
      out.push_back(std::move(r));
  return out;
}

}  // namespace retro
