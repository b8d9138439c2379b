//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/template.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>
#include <openssl/evp.h>

#include "retro/element.h"
#include "retro/log.h"
#include "retro/rings.h"
#include "retro/smiles.h"
#include "graph_util.h"

namespace retro {

namespace {

using Kind = TemplateError::Kind;

PatternGraph concat(const std::vector<PatternGraph> &parts) {
  PatternGraph out;
  for (const PatternGraph &g: parts) {
    const int offset = out.size();
    for (const PatternAtom &a: g.atoms())
      out.add_atom(a);
    for (const PatternBond &b: g.bonds())
      out.add_bond(b.begin + offset, b.end + offset, b.mask);
  }
  return out;
}

std::vector<int> identity_ranks(int n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Product and reactant pattern atoms in one graph, mapped pairs linked by an
// extra edge type.
struct UnionGraph {
  struct Edge {
    int begin, end, code;
  };

  int size() const { return static_cast<int>(adj.size()); }
  int num_bonds() const { return static_cast<int>(edges.size()); }
  std::span<const Neighbor> neighbors(int a) const { return adj[a]; }
  int find_bond(int a, int b) const {
    for (const Neighbor &nb: adj[a])
      if (nb.atom == b)
        return nb.bond;
    return -1;
  }
  void add_edge(int a, int b, int code) {
    edges.push_back({ a, b, code });
    adj[a].push_back({ b, num_bonds() - 1 });
    adj[b].push_back({ a, num_bonds() - 1 });
  }

  std::vector<std::vector<Neighbor>> adj;
  std::vector<Edge> edges;
};

constexpr int kMapEdge = 16;

struct CanonicalForm {
  RetroTemplate tmpl;
  std::string text;
};

CanonicalForm canonical_form(const RetroTemplate &t) {
  const PatternGraph &prod = t.product_pattern;
  const PatternGraph react = concat(t.reactant_patterns);
  const int np = prod.size();
  const int nr = react.size();

  UnionGraph g;
  g.adj.resize(np + nr);
  for (const PatternBond &b: prod.bonds())
    g.add_edge(b.begin, b.end, b.mask);
  for (const PatternBond &b: react.bonds())
    g.add_edge(np + b.begin, np + b.end, b.mask);
  std::vector<int> partner(np + nr, -1);
  for (int p = 0; p < np; ++p) {
    const int r = react.find_map(prod.atom(p).atom_map);
    if (r >= 0) {
      partner[p] = np + r;
      partner[np + r] = p;
      g.add_edge(p, np + r, kMapEdge);
    }
  }

  using Key = std::tuple<int, std::string, int, int>;
  std::vector<Key> inv(np + nr);
  for (int i = 0; i < np + nr; ++i) {
    const bool is_prod = i < np;
    const PatternAtom &a = is_prod ? prod.atom(i) : react.atom(i - np);
    const int deg = is_prod ? prod.degree(i) : react.degree(i - np);
    inv[i] = { is_prod ? 0 : 1, a.query.text(), partner[i] >= 0 ? 1 : 0, deg };
  }
  const std::vector<int> ranks = internal::canonical_order(
      g, inv, [&](int e) { return g.edges[e].code; });

  std::vector<int> prod_ranks(ranks.begin(), ranks.begin() + np);
  std::vector<int> react_ranks(ranks.begin() + np, ranks.end());

  // Renumber maps along the canonical product traversal.
  internal::DfsWriter<PatternGraph> order_writer(
      prod, prod_ranks, [](int) { return std::string(); },
      [](int) { return std::string(); });
  order_writer.write();
  PatternGraph new_prod = prod;
  PatternGraph new_react = react;
  for (int i = 0; i < nr; ++i)
    new_react.mutable_atom(i).atom_map = 0;
  int next = 1;
  for (int p: order_writer.visit_order()) {
    new_prod.mutable_atom(p).atom_map = 0;
    if (partner[p] >= 0) {
      new_prod.mutable_atom(p).atom_map = next;
      new_react.mutable_atom(partner[p] - np).atom_map = next;
      ++next;
    }
  }

  const std::string prod_text = write_smarts(new_prod, prod_ranks);

  std::vector<std::pair<std::string, PatternGraph>> parts;
  for (const auto &comp: new_react.components()) {
    PatternGraph sub = new_react.subgraph(comp);
    std::vector<int> sub_ranks;
    for (int a: comp)
      sub_ranks.push_back(react_ranks[a]);
    parts.emplace_back(write_smarts(sub, sub_ranks), std::move(sub));
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const auto &x, const auto &y) { return x.first < y.first; });

  CanonicalForm out;
  out.text = prod_text + ">>";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      out.text += '.';
    out.text += parts[i].first;
    out.tmpl.reactant_patterns.push_back(std::move(parts[i].second));
  }
  out.tmpl.product_pattern = std::move(new_prod);
  out.tmpl.source_smarts = out.text;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing and writing

RetroTemplate parse_template(std::string_view smarts) {
  const std::size_t arrow = smarts.find(">>");
  if (arrow == std::string_view::npos
      || smarts.find('>', arrow + 2) != std::string_view::npos)
    throw TemplateError(Kind::kInvalidTemplate,
                        "template must have the form product>>reactants");
  RetroTemplate t;
  t.source_smarts = std::string(smarts);
  t.product_pattern = parse_smarts(smarts.substr(0, arrow));
  const PatternGraph react = parse_smarts(smarts.substr(arrow + 2));
  for (const auto &comp: react.components())
    t.reactant_patterns.push_back(react.subgraph(comp));

  for (const PatternAtom &a: t.product_pattern.atoms()) {
    if (a.atom_map > 0 && react.find_map(a.atom_map) < 0)
      throw TemplateError(Kind::kInvalidTemplate,
                          "product atom map " + std::to_string(a.atom_map)
                              + " missing from reactant patterns");
  }
  return t;
}

std::string write_template(const RetroTemplate &t) {
  std::string out = write_smarts(t.product_pattern,
                                 identity_ranks(t.product_pattern.size()));
  out += ">>";
  for (std::size_t i = 0; i < t.reactant_patterns.size(); ++i) {
    if (i > 0)
      out += '.';
    out += write_smarts(t.reactant_patterns[i],
                        identity_ranks(t.reactant_patterns[i].size()));
  }
  return out;
}

std::string canonical_template_smarts(const RetroTemplate &t) {
  return canonical_form(t).text;
}

RetroTemplate canonicalize(const RetroTemplate &t) {
  return canonical_form(t).tmpl;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr)
      != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string template_hash(const RetroTemplate &t) {
  return sha256_hex(canonical_template_smarts(t));
}

std::string template_hash(std::string_view smarts) {
  return template_hash(parse_template(smarts));
}

// ---------------------------------------------------------------------------
// Application

std::string ReactantSet::key() const {
  std::string out;
  for (std::size_t i = 0; i < smiles.size(); ++i) {
    if (i > 0)
      out += '.';
    out += smiles[i];
  }
  return out;
}

ReactantSet ReactantSet::from_molecules(std::vector<Molecule> mols) {
  std::vector<std::pair<std::string, std::size_t>> keyed;
  for (std::size_t i = 0; i < mols.size(); ++i)
    keyed.emplace_back(canonical_smiles(mols[i]), i);
  std::sort(keyed.begin(), keyed.end());
  ReactantSet out;
  for (const auto &[smi, idx]: keyed) {
    if (!out.smiles.empty() && out.smiles.back() == smi)
      continue;
    out.smiles.push_back(smi);
    out.molecules.push_back(std::move(mols[idx]));
  }
  return out;
}

namespace {

BondOrder order_from_mask(std::uint8_t mask, bool both_aromatic) {
  switch (mask) {
  case bond_mask::kSingle:
    return BondOrder::kSingle;
  case bond_mask::kDouble:
    return BondOrder::kDouble;
  case bond_mask::kTriple:
    return BondOrder::kTriple;
  case bond_mask::kAromatic:
    return BondOrder::kAromatic;
  default:
    break;
  }
  if ((mask & bond_mask::kAromatic) && both_aromatic)
    return BondOrder::kAromatic;
  if (mask & bond_mask::kSingle)
    return BondOrder::kSingle;
  if (mask & bond_mask::kDouble)
    return BondOrder::kDouble;
  if (mask & bond_mask::kTriple)
    return BondOrder::kTriple;
  return BondOrder::kSingle;
}

[[noreturn]] void conflict(const std::string &what) {
  throw TemplateError(Kind::kRewriteConflict, what);
}

}  // namespace

ReactantSet rewrite_site(const RetroTemplate &t, const Molecule &product,
                         const Match &site) {
  const PatternGraph &pp = t.product_pattern;
  const PatternGraph rg = concat(t.reactant_patterns);
  const int n = product.size();

  std::vector<bool> removed(n, false);
  std::vector<int> image(rg.size(), -1);
  for (int p = 0; p < pp.size(); ++p) {
    const int r = rg.find_map(pp.atom(p).atom_map);
    if (r < 0)
      removed[site[p]] = true;
    else
      image[r] = site[p];
  }

  std::set<std::pair<int, int>> dropped;
  for (const PatternBond &b: pp.bonds()) {
    const int x = site[b.begin], y = site[b.end];
    dropped.emplace(std::min(x, y), std::max(x, y));
  }

  // Surviving product atoms keep their relative order; new atoms follow.
  Molecule out;
  std::vector<int> remap(n, -1);
  for (int a = 0; a < n; ++a)
    if (!removed[a])
      remap[a] = out.add_atom(product.atom(a));
  for (const Bond &b: product.bonds()) {
    if (removed[b.begin] || removed[b.end])
      continue;
    if (dropped.contains({ std::min(b.begin, b.end), std::max(b.begin, b.end) }))
      continue;
    out.add_bond(remap[b.begin], remap[b.end], b.order);
  }

  std::vector<int> target(rg.size());
  std::vector<bool> fresh(rg.size(), false);
  for (int r = 0; r < rg.size(); ++r) {
    const AtomQuery &q = rg.atom(r).query;
    if (image[r] >= 0) {
      target[r] = remap[image[r]];
      continue;
    }
    const auto z = q.atomic_number();
    if (!z)
      conflict("reactant pattern atom without a pinned element");
    Atom atom;
    atom.atomic_number = *z;
    target[r] = out.add_atom(atom);
    fresh[r] = true;
  }

  for (int r = 0; r < rg.size(); ++r) {
    const AtomQuery &q = rg.atom(r).query;
    Atom &atom = out.mutable_atom(target[r]);
    if (auto z = q.atomic_number())
      atom.atomic_number = *z;
    if (auto arom = q.aromatic())
      atom.aromatic = *arom;
    if (auto charge = q.charge())
      atom.charge = *charge;
    atom.atom_map = 0;
  }

  for (const PatternBond &b: rg.bonds()) {
    const int x = target[b.begin], y = target[b.end];
    const BondOrder order = order_from_mask(
        b.mask, out.atom(x).aromatic && out.atom(y).aromatic);
    const int existing = out.find_bond(x, y);
    if (existing >= 0)
      out.set_bond_order(existing, order);
    else
      out.add_bond(x, y, order);
  }

  // Hydrogens: pinned counts win; otherwise mapped atoms conserve valence and
  // new atoms take their default valence.
  for (int r = 0; r < rg.size(); ++r) {
    Atom &atom = out.mutable_atom(target[r]);
    if (auto h = rg.atom(r).query.hcount()) {
      atom.hcount = *h;
      continue;
    }
    if (fresh[r]) {
      const int h = default_hcount(out, target[r]);
      if (h < 0)
        conflict("no valid hydrogen count for a new atom");
      atom.hcount = h;
      continue;
    }
    const int delta = doubled_bond_valence(product, image[r])
                      - doubled_bond_valence(out, target[r]);
    const int half = delta >= 0 ? delta / 2 : -((-delta + 1) / 2);
    atom.hcount = std::max(0, product.atom(image[r]).hcount + half);
  }

  for (int a = 0; a < out.size(); ++a)
    if (exceeds_valence(out, a))
      conflict("valence exceeded at rewritten atom " + std::to_string(a));

  const std::vector<bool> in_ring = ring_atom_flags(out);
  for (int a = 0; a < out.size(); ++a)
    if (out.atom(a).aromatic && !in_ring[a])
      conflict("aromatic atom outside a ring");
  for (const Bond &b: out.bonds())
    if (b.order == BondOrder::kAromatic
        && !(out.atom(b.begin).aromatic && out.atom(b.end).aromatic))
      conflict("aromatic bond between non-aromatic atoms");

  perceive_aromaticity(out);

  std::vector<Molecule> parts;
  for (const auto &comp: out.components())
    parts.push_back(out.subgraph(comp));
  return ReactantSet::from_molecules(std::move(parts));
}

std::vector<ReactantSet> apply_template(const RetroTemplate &t,
                                        const Molecule &product,
                                        ApplyStats *stats) {
  std::vector<ReactantSet> out;
  const std::vector<Match> sites = find_matches(t.product_pattern, product);
  std::string product_smiles;
  if (!sites.empty())
    product_smiles = canonical_smiles(product);
  ApplyStats local;
  local.sites = static_cast<int>(sites.size());
  for (const Match &site: sites) {
    try {
      ReactantSet set = rewrite_site(t, product, site);
      if (std::find(set.smiles.begin(), set.smiles.end(), product_smiles)
          != set.smiles.end()) {
        ++local.product_recovered;
        continue;
      }
      out.push_back(std::move(set));
    } catch (const TemplateError &e) {
      if (e.kind() != Kind::kRewriteConflict)
        throw;
      ++local.conflicts;
      log::debug(std::string("skipped site: ") + e.what());
    }
  }
  if (stats != nullptr)
    *stats = local;
  return out;
}

// ---------------------------------------------------------------------------
// Reactions and extraction

MappedReaction parse_reaction_smiles(std::string_view text) {
  const std::size_t first = text.find('>');
  const std::size_t second =
      first == std::string_view::npos ? first : text.find('>', first + 1);
  if (second == std::string_view::npos
      || text.find('>', second + 1) != std::string_view::npos)
    throw TemplateError(Kind::kInvalidTemplate,
                        "reaction SMILES must have the form reactants>agents>products");
  const std::string_view lhs = text.substr(0, first);
  const std::string_view mid = text.substr(first + 1, second - first - 1);
  const std::string_view rhs = text.substr(second + 1);
  if (lhs.empty() || rhs.empty())
    throw TemplateError(Kind::kInvalidTemplate, "empty reaction side");

  auto split = [](const Molecule &m) {
    std::vector<Molecule> parts;
    for (const auto &comp: m.components())
      parts.push_back(m.subgraph(comp));
    return parts;
  };

  MappedReaction rxn;
  rxn.reactants = split(parse_smiles(lhs));
  if (!mid.empty())
    rxn.agents = split(parse_smiles(mid));
  rxn.product = parse_smiles(rhs);
  rxn.product_count = static_cast<int>(rxn.product.components().size());
  return rxn;
}

std::vector<int> contributing_reactants(const MappedReaction &rxn) {
  std::unordered_set<int> maps;
  for (const Atom &a: rxn.product.atoms())
    if (a.atom_map > 0)
      maps.insert(a.atom_map);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(rxn.reactants.size()); ++i) {
    for (const Atom &a: rxn.reactants[i].atoms()) {
      if (a.atom_map > 0 && maps.contains(a.atom_map)) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

namespace {

AtomQuery strict_query(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  AtomPrimitive sym;
  if (a.aromatic && !has_aromatic_symbol(a.atomic_number)) {
    sym.type = AtomPrimitive::Type::kAtomicNumber;
    sym.value = a.atomic_number;
  } else {
    sym.type = AtomPrimitive::Type::kSymbol;
    sym.value = a.atomic_number;
    sym.aromatic = a.aromatic;
  }
  int h = a.hcount;
  for (const Neighbor &nb: mol.neighbors(atom))
    h += mol.atom(nb.atom).atomic_number == 1 ? 1 : 0;
  AtomPrimitive hp { AtomPrimitive::Type::kHCount, h };
  AtomPrimitive dp { AtomPrimitive::Type::kDegree, mol.degree(atom) };
  AtomPrimitive cp { AtomPrimitive::Type::kCharge, a.charge };
  std::vector<AtomQuery::Disjunction> clauses { { { sym } }, { { hp } },
                                                { { dp } }, { { cp } } };
  if (a.aromatic && sym.type == AtomPrimitive::Type::kAtomicNumber)
    clauses.push_back({ { AtomPrimitive { AtomPrimitive::Type::kAromatic } } });
  return AtomQuery(std::move(clauses));
}

// Builds a pattern over `atoms` of `mol` (induced bonds, exact orders).
PatternGraph strict_pattern(const Molecule &mol, const std::vector<int> &atoms,
                            const std::unordered_set<int> &keep_maps) {
  PatternGraph g;
  std::vector<int> remap(mol.size(), -1);
  for (int a: atoms) {
    PatternAtom pa;
    pa.query = strict_query(mol, a);
    const int m = mol.atom(a).atom_map;
    pa.atom_map = keep_maps.contains(m) ? m : 0;
    remap[a] = g.add_atom(std::move(pa));
  }
  for (const Bond &b: mol.bonds())
    if (remap[b.begin] >= 0 && remap[b.end] >= 0)
      g.add_bond(remap[b.begin], remap[b.end], bond_mask::of(b.order));
  return g;
}

std::vector<int> within_radius(const Molecule &mol, const std::vector<int> &seeds,
                               int radius) {
  std::vector<int> dist(mol.size(), -1);
  std::deque<int> queue;
  for (int s: seeds) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  std::vector<int> out;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    out.push_back(a);
    if (dist[a] == radius)
      continue;
    for (const Neighbor &nb: mol.neighbors(a)) {
      if (dist[nb.atom] < 0) {
        dist[nb.atom] = dist[a] + 1;
        queue.push_back(nb.atom);
      }
    }
  }
  return out;
}

}  // namespace

RetroTemplate extract_template(const MappedReaction &rxn, int radius) {
  if (radius < 0)
    throw std::invalid_argument("template radius must be >= 0");
  const Molecule &prod = rxn.product;

  std::unordered_map<int, int> prod_atom;
  for (int a = 0; a < prod.size(); ++a) {
    const int m = prod.atom(a).atom_map;
    if (m > 0 && !prod_atom.emplace(m, a).second)
      throw TemplateError(Kind::kInconsistentMapping,
                          "duplicate product atom map " + std::to_string(m));
  }
  std::unordered_map<int, std::pair<int, int>> react_atom;
  for (int r = 0; r < static_cast<int>(rxn.reactants.size()); ++r) {
    const Molecule &mol = rxn.reactants[r];
    for (int a = 0; a < mol.size(); ++a) {
      const int m = mol.atom(a).atom_map;
      if (m > 0 && !react_atom.emplace(m, std::make_pair(r, a)).second)
        throw TemplateError(Kind::kInconsistentMapping,
                            "duplicate reactant atom map " + std::to_string(m));
    }
  }

  std::unordered_set<int> shared;
  for (const auto &[m, a]: prod_atom)
    if (react_atom.contains(m))
      shared.insert(m);
  if (shared.empty())
    throw TemplateError(Kind::kNoMappedAtoms, "no atom maps shared by both sides");

  auto signature = [&](const Molecule &mol, int atom) {
    std::vector<std::pair<int, int>> sig;
    for (const Neighbor &nb: mol.neighbors(atom)) {
      const int m = mol.atom(nb.atom).atom_map;
      sig.emplace_back(shared.contains(m) ? m : -1,
                       static_cast<int>(mol.bond(nb.bond).order));
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  };

  // Product atoms without a reactant counterpart must be removed by the
  // template; their mapped neighbors belong to the center.
  std::vector<int> orphans;
  std::set<int> center;
  for (int a = 0; a < prod.size(); ++a) {
    if (shared.contains(prod.atom(a).atom_map))
      continue;
    orphans.push_back(a);
    for (const Neighbor &nb: prod.neighbors(a)) {
      const int m = prod.atom(nb.atom).atom_map;
      if (shared.contains(m))
        center.insert(m);
    }
  }

  for (int m: shared) {
    const int pa = prod_atom.at(m);
    const auto [r, ra] = react_atom.at(m);
    const Atom &x = prod.atom(pa);
    const Atom &y = rxn.reactants[r].atom(ra);
    if (x.atomic_number != y.atomic_number)
      throw TemplateError(Kind::kInconsistentMapping,
                          "atom map " + std::to_string(m) + " changes element");
    if (x.charge != y.charge || x.hcount != y.hcount || x.aromatic != y.aromatic
        || signature(prod, pa) != signature(rxn.reactants[r], ra))
      center.insert(m);
  }
  if (center.empty())
    throw TemplateError(Kind::kEmptyCenter, "reaction has no changed atoms");

  // Mapped atoms within the radius on either side.
  std::unordered_set<int> included(center.begin(), center.end());
  {
    std::vector<int> seeds;
    for (int m: center)
      seeds.push_back(prod_atom.at(m));
    for (int a: within_radius(prod, seeds, radius))
      if (shared.contains(prod.atom(a).atom_map))
        included.insert(prod.atom(a).atom_map);
    for (int r = 0; r < static_cast<int>(rxn.reactants.size()); ++r) {
      std::vector<int> rs;
      for (int m: center)
        if (react_atom.at(m).first == r)
          rs.push_back(react_atom.at(m).second);
      if (rs.empty())
        continue;
      for (int a: within_radius(rxn.reactants[r], rs, radius)) {
        const int m = rxn.reactants[r].atom(a).atom_map;
        if (shared.contains(m))
          included.insert(m);
      }
    }
  }

  std::vector<int> prod_atoms;
  for (int a = 0; a < prod.size(); ++a)
    if (included.contains(prod.atom(a).atom_map)
        || std::find(orphans.begin(), orphans.end(), a) != orphans.end())
      prod_atoms.push_back(a);

  RetroTemplate t;
  t.product_pattern = strict_pattern(prod, prod_atoms, included);
  std::vector<PatternGraph> parts;
  for (int r: contributing_reactants(rxn)) {
    const Molecule &mol = rxn.reactants[r];
    std::vector<int> atoms;
    for (int a = 0; a < mol.size(); ++a) {
      const int m = mol.atom(a).atom_map;
      if (!shared.contains(m) || included.contains(m))
        atoms.push_back(a);
    }
    parts.push_back(strict_pattern(mol, atoms, included));
  }
  const PatternGraph react = concat(parts);
  for (const auto &comp: react.components())
    t.reactant_patterns.push_back(react.subgraph(comp));
  return canonicalize(t);
}

// ---------------------------------------------------------------------------
// Library

std::string TemplateLibrary::add(const RetroTemplate &t, int count) {
  const auto form = canonical_form(t);
  const std::string hash = sha256_hex(form.text);
  add_entry(hash, { form.text, count });
  return hash;
}

void TemplateLibrary::add_entry(const std::string &hash, LibraryEntry entry) {
  if (entry.count < 1)
    throw TemplateError(Kind::kInvalidTemplate, "library counts must be >= 1");
  auto [it, fresh] = entries_.emplace(hash, entry);
  if (!fresh)
    it->second.count += entry.count;
  total_ += entry.count;
}

std::optional<int> TemplateLibrary::lookup(const std::string &hash) const {
  auto it = entries_.find(hash);
  if (it == entries_.end())
    return std::nullopt;
  return it->second.count;
}

std::optional<int> TemplateLibrary::lookup(const RetroTemplate &t) const {
  return lookup(template_hash(t));
}

TemplateLibrary TemplateLibrary::filtered(int min_count) const {
  TemplateLibrary out;
  for (const auto &[hash, entry]: entries_)
    if (entry.count >= min_count)
      out.add_entry(hash, entry);
  return out;
}

TemplateLibrary TemplateLibrary::parse(std::string_view jsonl) {
  TemplateLibrary lib;
  std::istringstream in { std::string(jsonl) };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    std::string smarts, hash;
    int count = 0;
    try {
      const auto j = nlohmann::json::parse(line);
      smarts = j.at("smarts").get<std::string>();
      hash = j.at("hash").get<std::string>();
      count = j.at("count").get<int>();
    } catch (const nlohmann::json::exception &e) {
      throw TemplateError(Kind::kInvalidTemplate, where + e.what());
    }
    std::string actual;
    try {
      actual = template_hash(smarts);
    } catch (const std::exception &e) {
      throw TemplateError(Kind::kInvalidTemplate, where + e.what());
    }
    if (actual != hash)
      throw TemplateError(Kind::kHashMismatch,
                          where + "stored hash does not match template");
    lib.add_entry(hash, { canonical_template_smarts(parse_template(smarts)), count });
  }
  return lib;
}

TemplateLibrary TemplateLibrary::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read template library " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string TemplateLibrary::to_jsonl() const {
  std::vector<const std::pair<const std::string, LibraryEntry> *> order;
  for (const auto &kv: entries_)
    order.push_back(&kv);
  std::stable_sort(order.begin(), order.end(), [](auto *x, auto *y) {
    return x->second.count > y->second.count;
  });
  std::string out;
  for (const auto *kv: order) {
    nlohmann::ordered_json j;
    j["smarts"] = kv->second.smarts;
    j["hash"] = kv->first;
    j["count"] = kv->second.count;
    out += j.dump() + "\n";
  }
  return out;
}

void TemplateLibrary::save(const std::string &path) const {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write template library " + path);
  out << to_jsonl();
}

}  // namespace retro
