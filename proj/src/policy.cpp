//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/policy.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>
#include <set>
#include <unordered_map>

#include "retro/log.h"
#include "retro/smiles.h"

namespace retro {

std::vector<RouteSample> PolicyBackend::propose_routes(
    const Molecule &, int, const std::optional<std::string> &) const {
  throw BackendUnavailable(name() + " backend does not generate routes");
}

std::vector<PolicyProposal> propose(const PolicyBackend &backend,
                                    const Molecule &target,
                                    const PolicyConfig &cfg,
                                    ProposeStats *stats) {
  if (cfg.k < 1)
    throw PolicyError(PolicyError::Kind::kBadConfig, "k must be >= 1");
  ProposeStats local;
  const int request = std::max(cfg.k, cfg.candidate_pool);
  const std::vector<RawProposal> raw =
      backend.raw_proposals(target, request, cfg.condition);
  local.raw = static_cast<int>(raw.size());

  std::vector<PolicyProposal> out;
  std::unordered_map<std::string, std::size_t> seen;
  for (const RawProposal &r: raw) {
    PolicyProposal p;
    try {
      p.tmpl = parse_template(r.smarts);
      p.hash = template_hash(p.tmpl);
    } catch (const std::exception &e) {
      ++local.unparseable;
      log::debug("dropped unparseable template: " + std::string(e.what()));
      continue;
    }
    p.smarts = r.smarts;
    p.log_prob = r.log_prob;
    p.condition = cfg.condition;
    auto it = seen.find(p.hash);
    if (it != seen.end()) {
      ++local.duplicates;
      if (p.log_prob > out[it->second].log_prob)
        out[it->second] = std::move(p);
      continue;
    }
    seen.emplace(p.hash, out.size());
    out.push_back(std::move(p));
  }

  if (cfg.strict) {
    const std::size_t before = out.size();
    if (cfg.library == nullptr)
      out.clear();
    else
      out = strict_filter(*cfg.library, std::move(out),
                          [](const PolicyProposal &p) { return p.hash; });
    local.novel_removed = static_cast<int>(before - out.size());
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const PolicyProposal &a, const PolicyProposal &b) {
                     return a.log_prob > b.log_prob;
                   });
  if (static_cast<int>(out.size()) > cfg.k)
    out.resize(cfg.k);
  if (stats != nullptr)
    *stats = local;
  return out;
}

std::vector<double> normalize_priors(const std::vector<double> &log_probs,
                                     double temperature) {
  if (!(temperature > 0))
    throw std::invalid_argument("temperature must be positive");
  std::vector<double> out(log_probs.size());
  if (log_probs.empty())
    return out;
  const double top = *std::max_element(log_probs.begin(), log_probs.end());
  double sum = 0;
  for (std::size_t i = 0; i < log_probs.size(); ++i) {
    out[i] = std::exp((log_probs[i] - top) / temperature);
    sum += out[i];
  }
  for (double &x: out)
    x /= sum;
  return out;
}

std::vector<double> normalize_priors(const std::vector<PolicyProposal> &proposals,
                                     double temperature) {
  std::vector<double> lp;
  lp.reserve(proposals.size());
  for (const PolicyProposal &p: proposals)
    lp.push_back(p.log_prob);
  return normalize_priors(lp, temperature);
}

// ---------------------------------------------------------------------------
// Table policy

TablePolicy::TablePolicy(const std::vector<TableEntry> &entries)
    : TablePolicy(entries, Options()) { }

TablePolicy::TablePolicy(const std::vector<TableEntry> &entries, Options opts)
    : opts_(opts) {
  for (const TableEntry &e: entries) {
    std::string product;
    RetroTemplate tmpl;
    std::string hash;
    try {
      product = canonical_smiles(e.product);
      tmpl = parse_template(e.smarts);
      hash = template_hash(tmpl);
    } catch (const std::exception &ex) {
      log::warn("table policy skipped an entry: " + std::string(ex.what()));
      continue;
    }
    auto [it, fresh] = index_of_.emplace(hash, static_cast<int>(templates_.size()));
    if (fresh) {
      RetroTemplate canon = canonicalize(tmpl);
      templates_.push_back({ hash, canon.source_smarts, std::move(canon), 0 });
    }
    ++templates_[it->second].count;
    ++by_product_[product][it->second];
    ++total_count_;
    library_.add_entry(hash, { templates_[it->second].smarts, 1 });
  }
  if (templates_.empty())
    throw PolicyError(PolicyError::Kind::kEmptyDataset,
                      "table policy needs at least one template");
}

std::vector<std::pair<int, double>> TablePolicy::scored(
    const std::string &product_smiles, const Molecule *target) const {
  std::vector<std::pair<int, double>> exact, global;
  std::set<int> exact_ids;
  auto it = by_product_.find(product_smiles);
  if (it != by_product_.end()) {
    for (const auto &[idx, c]: it->second) {
      exact.emplace_back(idx, c + 1.0);
      exact_ids.insert(idx);
    }
  }
  const double denom = static_cast<double>(total_count_)
                       + static_cast<double>(templates_.size());
  for (int i = 0; i < static_cast<int>(templates_.size()); ++i) {
    if (exact_ids.contains(i))
      continue;
    if (opts_.require_match && target != nullptr
        && !has_match(templates_[i].tmpl.product_pattern, *target))
      continue;
    // Always below any exact-product weight (>= 2).
    global.emplace_back(i, 0.5 * (templates_[i].count + 1.0) / denom);
  }
  auto order = [&](const auto &a, const auto &b) {
    if (a.second != b.second)
      return a.second > b.second;
    return templates_[a.first].hash < templates_[b.first].hash;
  };
  std::sort(exact.begin(), exact.end(), order);
  std::sort(global.begin(), global.end(), order);

  double total = 0;
  for (const auto &e: exact)
    total += e.second;
  for (const auto &g: global)
    total += g.second;
  std::vector<std::pair<int, double>> out;
  for (const auto &e: exact)
    out.emplace_back(e.first, std::log(e.second / total));
  for (const auto &g: global)
    out.emplace_back(g.first, std::log(g.second / total));
  return out;
}

std::vector<RawProposal> TablePolicy::raw_proposals(
    const Molecule &target, int k, const std::optional<std::string> &) const {
  const auto ranked = scored(canonical_smiles(target), &target);
  std::vector<RawProposal> out;
  for (const auto &[idx, lp]: ranked) {
    if (static_cast<int>(out.size()) >= k)
      break;
    out.push_back({ templates_[idx].smarts, lp });
  }
  return out;
}

namespace {

struct Condition {
  std::optional<int> steps;
  std::optional<int> leaf_atoms;
};

Condition parse_condition(const std::optional<std::string> &cond) {
  Condition c;
  if (!cond)
    return c;
  static const std::regex kSteps(R"(<STEPS=(\d+)>)");
  static const std::regex kLeaf(R"(<LEAF_ATOMS=(\d+)>)");
  std::smatch m;
  if (std::regex_match(*cond, m, kSteps))
    c.steps = std::stoi(m[1]);
  else if (std::regex_match(*cond, m, kLeaf))
    c.leaf_atoms = std::stoi(m[1]);
  else
    log::warn("ignoring unsupported condition " + *cond);
  return c;
}

}  // namespace

std::vector<RouteSample> TablePolicy::propose_routes(
    const Molecule &target, int n_samples,
    const std::optional<std::string> &condition) const {
  const Condition cond = parse_condition(condition);
  std::unordered_map<std::string, Molecule> parsed;
  auto molecule = [&](const std::string &smi) -> const Molecule & {
    auto it = parsed.find(smi);
    if (it == parsed.end())
      it = parsed.emplace(smi, parse_smiles(smi)).first;
    return it->second;
  };

  struct Candidate {
    RouteSample sample;
    int leaf_atoms = 0;
  };
  std::vector<Candidate> found;
  std::set<std::vector<std::string>> distinct;

  std::function<void(std::vector<std::string>, RouteSample)> chain =
      [&](std::vector<std::string> mols, RouteSample acc) {
        if (static_cast<int>(found.size()) >= opts_.max_route_candidates)
          return;
        int pick = -1, pick_atoms = -1;
        for (int i = 0; i < static_cast<int>(mols.size()); ++i) {
          if (!by_product_.contains(mols[i]))
            continue;
          const int atoms = heavy_atom_count(molecule(mols[i]));
          if (atoms > pick_atoms || (atoms == pick_atoms && mols[i] < mols[pick])) {
            pick = i;
            pick_atoms = atoms;
          }
        }
        const bool at_limit = static_cast<int>(acc.templates.size()) >= opts_.max_route_steps;
        if (pick < 0 || at_limit) {
          if (!acc.templates.empty() && distinct.insert(acc.templates).second) {
            int leaf = 0;
            for (const std::string &s: mols)
              leaf = std::max(leaf, heavy_atom_count(molecule(s)));
            found.push_back({ acc, leaf });
          }
          return;
        }
        const std::string product = mols[pick];
        bool advanced = false;
        for (const auto &[idx, lp]: scored(product, nullptr)) {
          if (!by_product_.at(product).contains(idx))
            break;
          const Entry &e = templates_[idx];
          for (const ReactantSet &set: apply_template(e.tmpl, molecule(product))) {
            std::vector<std::string> next = mols;
            next.erase(next.begin() + pick);
            for (const std::string &s: set.smiles)
              if (std::find(next.begin(), next.end(), s) == next.end())
                next.push_back(s);
            RouteSample step = acc;
            step.templates.push_back(e.smarts);
            step.log_prob += lp;
            chain(std::move(next), std::move(step));
            advanced = true;
          }
        }
        if (!advanced && !acc.templates.empty()
            && distinct.insert(acc.templates).second) {
          int leaf = 0;
          for (const std::string &s: mols)
            leaf = std::max(leaf, heavy_atom_count(molecule(s)));
          found.push_back({ acc, leaf });
        }
      };
  chain({ canonical_smiles(target) }, RouteSample());

  std::vector<RouteSample> kept;
  std::vector<const Candidate *> order;
  for (const Candidate &c: found)
    order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](auto *a, auto *b) {
    return a->sample.log_prob > b->sample.log_prob;
  });
  for (const Candidate *c: order) {
    if (cond.steps && static_cast<int>(c->sample.templates.size()) != *cond.steps)
      continue;
    if (cond.leaf_atoms && c->leaf_atoms > *cond.leaf_atoms)
      continue;
    kept.push_back(c->sample);
  }
  std::vector<RouteSample> out;
  for (int i = 0; !kept.empty() && i < n_samples; ++i)
    out.push_back(kept[i % kept.size()]);
  return out;
}

}  // namespace retro
