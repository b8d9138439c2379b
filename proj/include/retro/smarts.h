//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_SMARTS_H_
#define RETRO_SMARTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "retro/molecule.h"

namespace retro {

class SmartsError: public std::runtime_error {
public:
  enum class Kind { kUnsupportedQueryFeature, kMalformedPattern };

  SmartsError(Kind kind, std::size_t position, std::string token,
              const std::string &what);

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  // The offending token (for unsupported features).
  const std::string &token() const noexcept { return token_; }

private:
  Kind kind_;
  std::size_t position_;
  std::string token_;
};

struct AtomPrimitive {
  enum class Type : std::uint8_t {
    kAny,           // *
    kSymbol,        // C, c, Cl, [se] ... (value = Z, aromatic flag)
    kAtomicNumber,  // #n
    kAromatic,      // a
    kAliphatic,     // A
    kHCount,        // Hn
    kDegree,        // Dn
    kConnectivity,  // Xn
    kCharge,        // +n / -n
    kIsotope,       // leading mass number
  };

  Type type = Type::kAny;
  int value = 0;
  bool aromatic = false;
  bool negated = false;

  bool matches(const Molecule &mol, int atom) const;
  std::string to_string() const;

  friend auto operator<=>(const AtomPrimitive &, const AtomPrimitive &) = default;
};

// Atom query in conjunctive form: low-precedence ';' clauses, each an
// OR (',') of high-precedence '&' conjunctions of primitives.
class AtomQuery {
public:
  using Conjunction = std::vector<AtomPrimitive>;
  using Disjunction = std::vector<Conjunction>;

  AtomQuery() = default;
  explicit AtomQuery(std::vector<Disjunction> clauses);

  bool matches(const Molecule &mol, int atom) const;

  // Normalized text without brackets or atom map; identical for
  // semantically identical spellings that differ only in primitive order.
  const std::string &text() const noexcept { return text_; }
  const std::vector<Disjunction> &clauses() const noexcept { return clauses_; }

  // Properties pinned by a single unnegated primitive in some clause; these
  // are the values written when the query is used as a rewrite target.
  std::optional<int> atomic_number() const;
  std::optional<bool> aromatic() const;
  std::optional<int> charge() const;
  std::optional<int> hcount() const;

  friend bool operator==(const AtomQuery &a, const AtomQuery &b) {
    return a.text_ == b.text_;
  }

private:
  std::optional<int> pinned(AtomPrimitive::Type type) const;

  std::vector<Disjunction> clauses_;
  std::string text_;
};

namespace bond_mask {
inline constexpr std::uint8_t kSingle = 1;
inline constexpr std::uint8_t kDouble = 2;
inline constexpr std::uint8_t kTriple = 4;
inline constexpr std::uint8_t kAromatic = 8;
inline constexpr std::uint8_t kDefault = kSingle | kAromatic;
inline constexpr std::uint8_t kAny = 15;

constexpr std::uint8_t of(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle:
    return kSingle;
  case BondOrder::kDouble:
    return kDouble;
  case BondOrder::kTriple:
    return kTriple;
  case BondOrder::kAromatic:
    return kAromatic;
  }
  return 0;
}
}  // namespace bond_mask

struct PatternAtom {
  AtomQuery query;
  int atom_map = 0;
};

struct PatternBond {
  int begin;
  int end;
  std::uint8_t mask = bond_mask::kDefault;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }
  bool matches(BondOrder order) const noexcept {
    return (mask & bond_mask::of(order)) != 0;
  }
};

class PatternGraph {
public:
  int add_atom(PatternAtom atom);
  int add_bond(int a, int b, std::uint8_t mask);
  void set_bond_mask(int bond, std::uint8_t mask) { bonds_[bond].mask = mask; }

  int size() const noexcept { return static_cast<int>(atoms_.size()); }
  bool empty() const noexcept { return atoms_.empty(); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }

  const PatternAtom &atom(int i) const { return atoms_[i]; }
  PatternAtom &mutable_atom(int i) { return atoms_[i]; }
  std::span<const PatternAtom> atoms() const noexcept { return atoms_; }
  const PatternBond &bond(int i) const { return bonds_[i]; }
  std::span<const PatternBond> bonds() const noexcept { return bonds_; }
  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }
  int find_bond(int a, int b) const;

  // Pattern atom carrying `map`, or -1.
  int find_map(int map) const;
  std::vector<std::vector<int>> components() const;
  PatternGraph subgraph(std::span<const int> atoms) const;

private:
  std::vector<PatternAtom> atoms_;
  std::vector<PatternBond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Supported subset: element symbols (aliphatic/aromatic case), #n, *, a, A,
// H/D/X counts, charges, isotopes, atom maps, '!' negation, '&' ',' ';'
// operators, bond orders - = # : ~ with the same operators. Recursive SMARTS,
// ring queries and other primitives raise kUnsupportedQueryFeature.
// Dot-separated components are kept in one graph.
PatternGraph parse_smarts(std::string_view text);

std::string bond_mask_text(std::uint8_t mask);

// Writes the pattern visiting atoms by `ranks`. Atoms are always bracketed.
std::string write_smarts(const PatternGraph &pattern,
                         const std::vector<int> &ranks, bool atom_maps = true);
// Canonical SMARTS (rank by query text, map, then neighborhood refinement).
std::string canonical_smarts(const PatternGraph &pattern, bool use_maps = true);

}  // namespace retro

#endif  // RETRO_SMARTS_H_
