//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_DATASET_H_
#define RETRO_DATASET_H_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "retro/route.h"
#include "retro/stock.h"
#include "retro/template.h"

namespace retro {

class DatasetError: public std::runtime_error {
public:
  enum class Kind { kFileUnreadable, kBadRecord };

  DatasetError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) { }
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct ReactionRecord {
  std::string id;
  std::optional<std::string> patent_id;
  std::string rxn_smiles;
  MappedReaction reaction;
  std::optional<std::string> template_smarts;
  std::optional<std::string> template_hash;

  // Throws DatasetError(kBadRecord) for a missing field or bad reaction SMILES.
  static ReactionRecord from_json(const nlohmann::json &j);
  nlohmann::ordered_json to_json() const;
};

// Mapped reaction SMILES rebuilt from the parsed molecules.
std::string write_reaction_smiles(const MappedReaction &rxn);

struct LineIssue {
  int line = 0;
  std::string message;
};

// JSON Lines reader; bad lines are skipped and reported.
std::vector<ReactionRecord> parse_reactions(std::string_view jsonl,
                                            std::vector<LineIssue> *issues = nullptr);
std::vector<ReactionRecord> load_reactions(const std::string &path,
                                           std::vector<LineIssue> *issues = nullptr);
std::string reactions_to_jsonl(const std::vector<ReactionRecord> &records);

enum class FilterRule {
  kMaxReactants,          // at most 3 reactants
  kSingleProduct,         // exactly one product
  kReactantAtomRange,     // reactant heavy atoms in [10, 70]
  kMinProductAtoms,       // product heavy atoms >= 8
  kReactantProductRatio,  // reactant atoms < 4 x product atoms
  kMaxUnmappedReactant,   // unmapped reactant atoms < 30
  kContributingReactants, // non-contributing reactants removed; some remain
  kMaxOrphanAtoms,        // atoms mapped on one side only <= 1
  kMaxUnmappedCommon,     // unmapped atoms of the common substructure <= 10
  kProductNotInReactants,
  kNoMappedUnmappedAromatic,
};

inline constexpr int kNumFilterRules = 11;

std::string filter_rule_name(FilterRule rule);
std::vector<FilterRule> all_filter_rules();

struct FilterReport {
  std::array<bool, kNumFilterRules> passed {};
  std::vector<int> removed_reactants;  // indices into the input reactants

  bool accepted() const;
  bool passed_rule(FilterRule r) const { return passed[static_cast<int>(r)]; }
  std::vector<FilterRule> failed() const;
};

struct FilterResult {
  bool accept = false;
  ReactionRecord modified;
  FilterReport report;
};

// Removes non-contributing reactants, then evaluates every rule in listed
// order on the modified reaction.
FilterResult filter_reaction(const ReactionRecord &record);

// Atoms with a nonzero map present on one side only.
int orphan_atom_count(const MappedReaction &rxn);

// Grows the map-induced reactant/product correspondence over equal unmapped
// neighbors and returns the number of unmapped pairs added.
int unmapped_common_atoms(const MappedReaction &rxn);

// Sorted canonical reactants and canonical product, maps removed.
std::string reaction_hash(const MappedReaction &rxn);

inline constexpr int kDefaultRarityCutoff = 10;

// Reactions whose template count in `library` is <= rarity_cutoff (unseen
// templates count 0) form the hard set; the remainder is the training set.
// Reactions without a template are extracted on the fly; failures count as
// unseen.
std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>> build_hard_split(
    const std::vector<ReactionRecord> &reactions, const TemplateLibrary &library,
    int rarity_cutoff = kDefaultRarityCutoff);

inline constexpr double kDefaultMolWeightThreshold = 500.0;

// Products heavier than the threshold go to the second (out-of-distribution)
// list.
std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>> split_by_molweight(
    const std::vector<ReactionRecord> &reactions,
    double threshold_da = kDefaultMolWeightThreshold);

struct RouteBuildStats {
  int candidates = 0;
  int single_step = 0;
  int loops = 0;
  int duplicates = 0;
  int subroutes = 0;
};

// Links product -> reactant chains within each patent and extracts the
// deepest route from every final product. Single-step, looped, duplicate and
// contained routes are dropped.
std::vector<RouteTree> build_routes(const std::vector<ReactionRecord> &reactions,
                                    RouteBuildStats *stats = nullptr);

// One SMILES per line, canonicalized and deduplicated. Unparseable lines are
// skipped with a warning. Throws DatasetError(kFileUnreadable).
StockSet load_stock(const std::string &path, std::vector<LineIssue> *issues = nullptr);
StockSet parse_stock(std::string_view text, std::vector<LineIssue> *issues = nullptr);

std::string read_file(const std::string &path);

}  // namespace retro

#endif  // RETRO_DATASET_H_
