//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_MOLECULE_H_
#define RETRO_MOLECULE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace retro {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Twice the bond's contribution to valence; aromatic bonds count 1.5.
constexpr int doubled_valence(BondOrder order) noexcept {
  switch (order) {
  case BondOrder::kSingle:
    return 2;
  case BondOrder::kDouble:
    return 4;
  case BondOrder::kTriple:
    return 6;
  case BondOrder::kAromatic:
    return 3;
  }
  return 2;
}

struct Atom {
  int atomic_number = 6;
  int charge = 0;
  // Total attached hydrogens not present as explicit graph atoms.
  int hcount = 0;
  int isotope = 0;
  // 0 means unmapped.
  int atom_map = 0;
  bool aromatic = false;

  friend bool operator==(const Atom &, const Atom &) = default;
};

struct Bond {
  int begin;
  int end;
  BondOrder order;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

// Attributed molecular graph with implicit hydrogens. A Molecule is built
// incrementally by parsers and rewriters and treated as a value afterwards.
class Molecule {
public:
  int add_atom(const Atom &atom);
  // Throws std::invalid_argument for self loops or duplicate bonds.
  int add_bond(int a, int b, BondOrder order);
  void set_bond_order(int bond, BondOrder order) { bonds_[bond].order = order; }

  int size() const noexcept { return static_cast<int>(atoms_.size()); }
  bool empty() const noexcept { return atoms_.empty(); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &mutable_atom(int i) { return atoms_[i]; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  const Bond &bond(int i) const { return bonds_[i]; }
  std::span<const Bond> bonds() const noexcept { return bonds_; }

  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }

  // Bond index between a and b, or -1.
  int find_bond(int a, int b) const;

  // Connected components as sorted atom index lists, ordered by first atom.
  std::vector<std::vector<int>> components() const;

  // Induced subgraph over `atoms` (in the given order).
  Molecule subgraph(std::span<const int> atoms) const;

  void clear_atom_maps();

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Sum of bond valences around an atom, doubled so aromatic bonds stay exact.
int doubled_bond_valence(const Molecule &mol, int atom);
int aromatic_bond_count(const Molecule &mol, int atom);

// Implicit hydrogen count an unbracketed SMILES atom would receive. Returns
// -1 when the explicit bonds exceed every default valence.
int default_hcount(const Molecule &mol, int atom);

// Largest valence allowed for the atom given its charge, or -1 if unknown.
int max_valence(const Atom &atom);

// True when bonds + hydrogens exceed the atom's maximum valence.
bool exceeds_valence(const Molecule &mol, int atom);

int heavy_atom_count(const Molecule &mol);

// Grams per mole including implicit hydrogens.
double molecular_weight(const Molecule &mol);

}  // namespace retro

#endif  // RETRO_MOLECULE_H_
