//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/dataset.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "retro/log.h"
#include "retro/smiles.h"

namespace retro {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw DatasetError(DatasetError::Kind::kFileUnreadable, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string plain_smiles(const Molecule &mol) {
  Molecule copy = mol;
  copy.clear_atom_maps();
  return canonical_smiles(copy);
}

std::string join(const std::vector<std::string> &parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i)
      out += sep;
    out += parts[i];
  }
  return out;
}

template <class Fn>
void for_each_line(std::string_view text, Fn fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    ++line_no;
    fn(line_no, line);
    pos = end + 1;
  }
}

bool blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Records

ReactionRecord ReactionRecord::from_json(const nlohmann::json &j) {
  using Kind = DatasetError::Kind;
  if (!j.is_object())
    throw DatasetError(Kind::kBadRecord, "record is not a JSON object");
  ReactionRecord r;
  if (!j.contains("id"))
    throw DatasetError(Kind::kBadRecord, "record has no \"id\"");
  r.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
  if (j.contains("patent_id") && !j["patent_id"].is_null())
    r.patent_id = j["patent_id"].is_string() ? j["patent_id"].get<std::string>()
                                              : j["patent_id"].dump();
  if (!j.contains("rxn_smiles") || !j["rxn_smiles"].is_string())
    throw DatasetError(Kind::kBadRecord, "record '" + r.id + "' has no \"rxn_smiles\"");
  r.rxn_smiles = j["rxn_smiles"].get<std::string>();
  try {
    r.reaction = parse_reaction_smiles(r.rxn_smiles);
  } catch (const std::exception &e) {
    throw DatasetError(Kind::kBadRecord, "record '" + r.id + "': " + e.what());
  }
  if (j.contains("template") && j["template"].is_string())
    r.template_smarts = j["template"].get<std::string>();
  if (j.contains("template_hash") && j["template_hash"].is_string())
    r.template_hash = j["template_hash"].get<std::string>();
  return r;
}

nlohmann::ordered_json ReactionRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  if (patent_id)
    j["patent_id"] = *patent_id;
  j["rxn_smiles"] = rxn_smiles;
  if (template_smarts)
    j["template"] = *template_smarts;
  if (template_hash)
    j["template_hash"] = *template_hash;
  return j;
}

std::string write_reaction_smiles(const MappedReaction &rxn) {
  std::vector<std::string> r, a;
  for (const Molecule &m: rxn.reactants)
    r.push_back(mapped_smiles(m));
  for (const Molecule &m: rxn.agents)
    a.push_back(mapped_smiles(m));
  return join(r, '.') + ">" + join(a, '.') + ">" + mapped_smiles(rxn.product);
}

std::vector<ReactionRecord> parse_reactions(std::string_view jsonl,
                                            std::vector<LineIssue> *issues) {
  std::vector<ReactionRecord> out;
  for_each_line(jsonl, [&](int line_no, std::string_view line) {
    if (blank(line))
      return;
    try {
      out.push_back(ReactionRecord::from_json(nlohmann::json::parse(line)));
    } catch (const std::exception &e) {
      const std::string msg = e.what();
      log::warn("line " + std::to_string(line_no) + ": " + msg);
      if (issues != nullptr)
        issues->push_back({ line_no, msg });
    }
  });
  return out;
}

std::vector<ReactionRecord> load_reactions(const std::string &path,
                                           std::vector<LineIssue> *issues) {
  return parse_reactions(read_file(path), issues);
}

std::string reactions_to_jsonl(const std::vector<ReactionRecord> &records) {
  std::string out;
  for (const ReactionRecord &r: records)
    out += r.to_json().dump() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Filter

std::string filter_rule_name(FilterRule rule) {
  switch (rule) {
  case FilterRule::kMaxReactants: return "max_reactants";
  case FilterRule::kSingleProduct: return "single_product";
  case FilterRule::kReactantAtomRange: return "reactant_atom_range";
  case FilterRule::kMinProductAtoms: return "min_product_atoms";
  case FilterRule::kReactantProductRatio: return "reactant_product_ratio";
  case FilterRule::kMaxUnmappedReactant: return "max_unmapped_reactant_atoms";
  case FilterRule::kContributingReactants: return "contributing_reactants";
  case FilterRule::kMaxOrphanAtoms: return "max_orphan_atoms";
  case FilterRule::kMaxUnmappedCommon: return "max_unmapped_common_atoms";
  case FilterRule::kProductNotInReactants: return "product_not_in_reactants";
  case FilterRule::kNoMappedUnmappedAromatic: return "no_mapped_unmapped_aromatic_bond";
  }
  return "unknown";
}

std::vector<FilterRule> all_filter_rules() {
  std::vector<FilterRule> out;
  for (int i = 0; i < kNumFilterRules; ++i)
    out.push_back(static_cast<FilterRule>(i));
  return out;
}

bool FilterReport::accepted() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

std::vector<FilterRule> FilterReport::failed() const {
  std::vector<FilterRule> out;
  for (int i = 0; i < kNumFilterRules; ++i)
    if (!passed[i])
      out.push_back(static_cast<FilterRule>(i));
  return out;
}

int orphan_atom_count(const MappedReaction &rxn) {
  std::unordered_set<int> prod, react;
  for (const Atom &a: rxn.product.atoms())
    if (a.atom_map > 0)
      prod.insert(a.atom_map);
  for (const Molecule &m: rxn.reactants)
    for (const Atom &a: m.atoms())
      if (a.atom_map > 0)
        react.insert(a.atom_map);
  int n = 0;
  for (const Molecule &m: rxn.reactants)
    for (const Atom &a: m.atoms())
      if (a.atom_map > 0 && !prod.contains(a.atom_map))
        ++n;
  for (const Atom &a: rxn.product.atoms())
    if (a.atom_map > 0 && !react.contains(a.atom_map))
      ++n;
  return n;
}

int unmapped_common_atoms(const MappedReaction &rxn) {
  // Reactant atoms are addressed as (molecule, atom).
  using RAtom = std::pair<int, int>;
  std::map<RAtom, int> r_to_p;
  std::vector<bool> p_used(rxn.product.size(), false);
  std::unordered_map<int, int> prod_by_map;
  for (int i = 0; i < rxn.product.size(); ++i)
    if (rxn.product.atom(i).atom_map > 0)
      prod_by_map.emplace(rxn.product.atom(i).atom_map, i);

  std::deque<std::pair<RAtom, int>> queue;
  for (int m = 0; m < static_cast<int>(rxn.reactants.size()); ++m) {
    const Molecule &mol = rxn.reactants[m];
    for (int i = 0; i < mol.size(); ++i) {
      auto it = prod_by_map.find(mol.atom(i).atom_map);
      if (mol.atom(i).atom_map > 0 && it != prod_by_map.end() && !p_used[it->second]) {
        r_to_p.emplace(RAtom { m, i }, it->second);
        p_used[it->second] = true;
        queue.push_back({ { m, i }, it->second });
      }
    }
  }

  int added = 0;
  while (!queue.empty()) {
    const auto [ra, p] = queue.front();
    queue.pop_front();
    const Molecule &mol = rxn.reactants[ra.first];
    for (const Neighbor &rn: mol.neighbors(ra.second)) {
      const RAtom cand { ra.first, rn.atom };
      if (r_to_p.contains(cand))
        continue;
      const Atom &x = mol.atom(rn.atom);
      for (const Neighbor &pn: rxn.product.neighbors(p)) {
        if (p_used[pn.atom])
          continue;
        const Atom &y = rxn.product.atom(pn.atom);
        if (x.atomic_number != y.atomic_number || x.aromatic != y.aromatic
            || x.charge != y.charge
            || mol.bond(rn.bond).order != rxn.product.bond(pn.bond).order)
          continue;
        r_to_p.emplace(cand, pn.atom);
        p_used[pn.atom] = true;
        queue.push_back({ cand, pn.atom });
        ++added;
        break;
      }
    }
  }
  return added;
}

namespace {

bool aromatic_mapped_unmapped(const Molecule &m) {
  for (const Bond &b: m.bonds()) {
    if (b.order != BondOrder::kAromatic)
      continue;
    const bool x = m.atom(b.begin).atom_map > 0, y = m.atom(b.end).atom_map > 0;
    if (x != y)
      return true;
  }
  return false;
}

}  // namespace

FilterResult filter_reaction(const ReactionRecord &record) {
  FilterResult res;
  res.modified = record;
  MappedReaction &rxn = res.modified.reaction;

  const std::vector<int> keep = contributing_reactants(record.reaction);
  {
    std::vector<Molecule> kept;
    std::size_t k = 0;
    for (int i = 0; i < static_cast<int>(record.reaction.reactants.size()); ++i) {
      if (k < keep.size() && keep[k] == i) {
        kept.push_back(record.reaction.reactants[i]);
        ++k;
      } else {
        res.report.removed_reactants.push_back(i);
      }
    }
    rxn.reactants = std::move(kept);
    if (!res.report.removed_reactants.empty())
      res.modified.rxn_smiles = write_reaction_smiles(rxn);
  }

  int reactant_atoms = 0, unmapped = 0;
  for (const Molecule &m: rxn.reactants) {
    reactant_atoms += heavy_atom_count(m);
    for (int i = 0; i < m.size(); ++i)
      if (m.atom(i).atomic_number != 1 && m.atom(i).atom_map == 0)
        ++unmapped;
  }
  const int product_atoms = heavy_atom_count(rxn.product);

  bool product_in_reactants = false;
  {
    const std::string prod = plain_smiles(rxn.product);
    for (const Molecule &m: record.reaction.reactants)
      if (plain_smiles(m) == prod)
        product_in_reactants = true;
  }
  bool bad_aromatic = aromatic_mapped_unmapped(rxn.product);
  for (const Molecule &m: rxn.reactants)
    bad_aromatic = bad_aromatic || aromatic_mapped_unmapped(m);

  auto set = [&](FilterRule r, bool ok) { res.report.passed[static_cast<int>(r)] = ok; };
  set(FilterRule::kMaxReactants, rxn.reactants.size() <= 3);
  set(FilterRule::kSingleProduct, rxn.product_count == 1);
  set(FilterRule::kReactantAtomRange, reactant_atoms >= 10 && reactant_atoms <= 70);
  set(FilterRule::kMinProductAtoms, product_atoms >= 8);
  set(FilterRule::kReactantProductRatio, reactant_atoms < 4 * product_atoms);
  set(FilterRule::kMaxUnmappedReactant, unmapped < 30);
  set(FilterRule::kContributingReactants, !rxn.reactants.empty());
  set(FilterRule::kMaxOrphanAtoms, orphan_atom_count(rxn) <= 1);
  set(FilterRule::kMaxUnmappedCommon, unmapped_common_atoms(rxn) <= 10);
  set(FilterRule::kProductNotInReactants, !product_in_reactants);
  set(FilterRule::kNoMappedUnmappedAromatic, !bad_aromatic);
  res.accept = res.report.accepted();
  return res;
}

// ---------------------------------------------------------------------------
// Splits

std::string reaction_hash(const MappedReaction &rxn) {
  std::vector<std::string> r;
  for (const Molecule &m: rxn.reactants)
    r.push_back(plain_smiles(m));
  std::sort(r.begin(), r.end());
  return sha256_hex(join(r, '.') + ">>" + plain_smiles(rxn.product));
}

std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>> build_hard_split(
    const std::vector<ReactionRecord> &reactions, const TemplateLibrary &library,
    int rarity_cutoff) {
  std::vector<bool> hard(reactions.size(), false);
  std::unordered_set<std::string> hard_hashes;
  std::vector<std::string> hashes;
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    const ReactionRecord &r = reactions[i];
    std::optional<std::string> th = r.template_hash;
    if (!th && r.template_smarts) {
      try {
        th = template_hash(*r.template_smarts);
      } catch (const std::exception &) { }
    }
    if (!th) {
      try {
        th = template_hash(extract_template(r.reaction));
      } catch (const std::exception &) { }
    }
    const int count = th ? library.lookup(*th).value_or(0) : 0;
    hashes.push_back(reaction_hash(r.reaction));
    if (count <= rarity_cutoff) {
      hard[i] = true;
      hard_hashes.insert(hashes.back());
    }
  }
  std::vector<ReactionRecord> train, test;
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    if (hard[i] || hard_hashes.contains(hashes[i]))
      test.push_back(reactions[i]);
    else
      train.push_back(reactions[i]);
  }
  return { std::move(train), std::move(test) };
}

std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>> split_by_molweight(
    const std::vector<ReactionRecord> &reactions, double threshold_da) {
  std::vector<ReactionRecord> train, ood;
  for (const ReactionRecord &r: reactions)
    (molecular_weight(r.reaction.product) > threshold_da ? ood : train).push_back(r);
  return { std::move(train), std::move(ood) };
}

// ---------------------------------------------------------------------------
// Routes

namespace {

struct GroupReaction {
  std::string product;
  std::vector<std::string> reactants;
  std::string template_smarts;
  std::string template_hash;
};

struct Built {
  RouteNode node;
  int depth = 0;
};

class PatentRoutes {
public:
  explicit PatentRoutes(std::vector<GroupReaction> rxns) : rxns_(std::move(rxns)) {
    for (std::size_t i = 0; i < rxns_.size(); ++i) {
      producers_[rxns_[i].product].push_back(static_cast<int>(i));
      for (const std::string &s: rxns_[i].reactants)
        used_.insert(s);
    }
  }

  std::vector<RouteNode> routes() {
    std::vector<RouteNode> out;
    std::set<std::string> done;
    for (const GroupReaction &r: rxns_) {
      if (used_.contains(r.product) || !done.insert(r.product).second)
        continue;
      std::vector<std::string> ancestors;
      out.push_back(build(r.product, ancestors).node);
    }
    return out;
  }

private:
  Built build(const std::string &mol, std::vector<std::string> &ancestors) {
    Built leaf { RouteNode { mol, false, {} }, 0 };
    if (std::find(ancestors.begin(), ancestors.end(), mol) != ancestors.end())
      return leaf;
    auto it = producers_.find(mol);
    if (it == producers_.end())
      return leaf;
    ancestors.push_back(mol);
    Built best = leaf;
    best.depth = -1;
    for (int ri: it->second) {
      const GroupReaction &r = rxns_[ri];
      RouteReaction rx { r.template_smarts, r.template_hash, {} };
      int depth = 0;
      for (const std::string &c: r.reactants) {
        Built child = build(c, ancestors);
        depth = std::max(depth, child.depth);
        rx.children.push_back(std::move(child.node));
      }
      if (depth + 1 > best.depth) {
        best.node = RouteNode { mol, false, { std::move(rx) } };
        best.depth = depth + 1;
      }
    }
    ancestors.pop_back();
    return best;
  }

  std::vector<GroupReaction> rxns_;
  std::map<std::string, std::vector<int>> producers_;
  std::unordered_set<std::string> used_;
};

}  // namespace

std::vector<RouteTree> build_routes(const std::vector<ReactionRecord> &reactions,
                                    RouteBuildStats *stats) {
  std::map<std::string, std::vector<GroupReaction>> groups;
  for (const ReactionRecord &r: reactions) {
    GroupReaction g;
    g.product = plain_smiles(r.reaction.product);
    for (const Molecule &m: r.reaction.reactants)
      g.reactants.push_back(plain_smiles(m));
    std::sort(g.reactants.begin(), g.reactants.end());
    g.reactants.erase(std::unique(g.reactants.begin(), g.reactants.end()),
                      g.reactants.end());
    if (r.template_smarts) {
      g.template_smarts = *r.template_smarts;
      g.template_hash = r.template_hash.value_or("");
    }
    const std::string key = r.patent_id ? "p:" + *r.patent_id : "r:" + r.id;
    groups[key].push_back(std::move(g));
  }

  RouteBuildStats st;
  std::vector<RouteTree> kept;
  std::unordered_set<std::string> seen;
  for (auto &[key, rxns]: groups) {
    for (RouteNode &route: PatentRoutes(std::move(rxns)).routes()) {
      ++st.candidates;
      if (route_has_loop(route)) {
        ++st.loops;
        continue;
      }
      if (route_steps(route) < 2) {
        ++st.single_step;
        continue;
      }
      if (!seen.insert(route_hash(route)).second) {
        ++st.duplicates;
        continue;
      }
      kept.push_back(canonical_route(route));
    }
  }

  std::vector<bool> contained(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size() && !contained[i]; ++j)
      contained[i] = i != j && is_subroute(kept[i], kept[j]);
  std::vector<RouteTree> out;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (contained[i])
      ++st.subroutes;
    else
      out.push_back(std::move(kept[i]));
  }
  if (stats != nullptr)
    *stats = st;
  return out;
}

// ---------------------------------------------------------------------------
// Stock

StockSet parse_stock(std::string_view text, std::vector<LineIssue> *issues) {
  StockSet stock;
  for_each_line(text, [&](int line_no, std::string_view line) {
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string_view::npos)
      return;
    const auto e = line.find_last_not_of(" \t");
    std::string_view smi = line.substr(b, e - b + 1);
    // Tolerate "SMILES<ws>name" rows.
    const auto ws = smi.find_first_of(" \t");
    if (ws != std::string_view::npos)
      smi = smi.substr(0, ws);
    try {
      stock.add(smi);
    } catch (const std::exception &ex) {
      const std::string msg = "unparseable SMILES '" + std::string(smi) + "': " + ex.what();
      log::warn("stock line " + std::to_string(line_no) + ": " + msg);
      if (issues != nullptr)
        issues->push_back({ line_no, msg });
    }
  });
  if (stock.empty())
    log::warn("stock is empty");
  return stock;
}

StockSet load_stock(const std::string &path, std::vector<LineIssue> *issues) {
  StockSet stock = parse_stock(read_file(path), issues);
  log::info("loaded " + std::to_string(stock.size()) + " stock molecules from " + path);
  return stock;
}

}  // namespace retro
