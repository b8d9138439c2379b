//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_TEMPLATE_H_
#define RETRO_TEMPLATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "retro/match.h"
#include "retro/molecule.h"
#include "retro/smarts.h"

namespace retro {

class TemplateError: public std::runtime_error {
public:
  enum class Kind {
    kInvalidTemplate,
    kRewriteConflict,
    kNoMappedAtoms,
    kInconsistentMapping,
    kEmptyCenter,
    kHashMismatch,
  };

  TemplateError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) { }

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

// Retro-direction template: product pattern >> reactant patterns.
struct RetroTemplate {
  PatternGraph product_pattern;
  std::vector<PatternGraph> reactant_patterns;
  std::string source_smarts;
};

// Parses "product>>reactant1.reactant2". Every mapped product atom must occur
// exactly once among the reactant patterns.
RetroTemplate parse_template(std::string_view smarts);

// Non-canonical spelling in pattern atom order.
std::string write_template(const RetroTemplate &t);

// Canonical spelling: atom maps renumbered 1..n along the canonical product
// traversal, reactant patterns sorted by their canonical text.
std::string canonical_template_smarts(const RetroTemplate &t);
RetroTemplate canonicalize(const RetroTemplate &t);

// Hex SHA-256 of the canonical spelling.
std::string template_hash(const RetroTemplate &t);
std::string template_hash(std::string_view smarts);

std::string sha256_hex(std::string_view data);

// Deduplicated, sorted set of molecules.
struct ReactantSet {
  std::vector<Molecule> molecules;
  std::vector<std::string> smiles;

  // Dot-joined sorted canonical SMILES.
  std::string key() const;
  static ReactantSet from_molecules(std::vector<Molecule> mols);
};

struct ApplyStats {
  int sites = 0;
  int conflicts = 0;
  int product_recovered = 0;
};

// Rewrites one match site. Throws TemplateError(kRewriteConflict) when the
// result violates valence or leaves aromatic atoms outside a ring.
ReactantSet rewrite_site(const RetroTemplate &t, const Molecule &product,
                         const Match &site);

// One reactant set per match site of the product pattern, in match order.
// Conflicting sites and sets containing the product itself are skipped.
std::vector<ReactantSet> apply_template(const RetroTemplate &t,
                                        const Molecule &product,
                                        ApplyStats *stats = nullptr);

struct MappedReaction {
  std::vector<Molecule> reactants;
  std::vector<Molecule> agents;
  Molecule product;
  // Number of dot-separated product components.
  int product_count = 1;
};

// "reactants>agents>products" or "reactants>>products".
MappedReaction parse_reaction_smiles(std::string_view text);

// Reactants sharing at least one atom map with the product.
std::vector<int> contributing_reactants(const MappedReaction &rxn);

inline constexpr int kDefaultTemplateRadius = 1;

// Reaction center plus mapped atoms within `radius` bonds on either side,
// plus every unmapped atom of contributing reactants. Returns the canonical
// template.
RetroTemplate extract_template(const MappedReaction &rxn,
                               int radius = kDefaultTemplateRadius);

struct LibraryEntry {
  std::string smarts;
  int count = 0;
};

class TemplateLibrary {
public:
  // Adds `count` occurrences; returns the hash.
  std::string add(const RetroTemplate &t, int count = 1);
  void add_entry(const std::string &hash, LibraryEntry entry);

  std::optional<int> lookup(const std::string &hash) const;
  std::optional<int> lookup(const RetroTemplate &t) const;
  bool contains(const std::string &hash) const { return entries_.contains(hash); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  long long total_count() const noexcept { return total_; }
  const std::map<std::string, LibraryEntry> &entries() const noexcept {
    return entries_;
  }

  // Entries with count >= min_count.
  TemplateLibrary filtered(int min_count) const;

  // JSON Lines {"smarts", "hash", "count"}; hashes are recomputed on load and
  // a mismatch raises kHashMismatch.
  static TemplateLibrary load(const std::string &path);
  static TemplateLibrary parse(std::string_view jsonl);
  std::string to_jsonl() const;
  void save(const std::string &path) const;

private:
  std::map<std::string, LibraryEntry> entries_;
  long long total_ = 0;
};

// Keeps the items whose hash is in the library, preserving order.
template <class T, class HashOf>
std::vector<T> strict_filter(const TemplateLibrary &lib, std::vector<T> items,
                             HashOf hash_of) {
  std::vector<T> kept;
  for (auto &item: items)
    if (lib.contains(hash_of(item)))
      kept.push_back(std::move(item));
  return kept;
}

}  // namespace retro

#endif  // RETRO_TEMPLATE_H_
