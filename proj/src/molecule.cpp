//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/molecule.h"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "retro/element.h"

namespace retro {

int Molecule::add_atom(const Atom &atom) {
  atoms_.push_back(atom);
  adj_.emplace_back();
  return size() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  if (a == b)
    throw std::invalid_argument("self bond on atom " + std::to_string(a));
  if (find_bond(a, b) >= 0)
    throw std::invalid_argument("duplicate bond " + std::to_string(a) + "-"
                                + std::to_string(b));
  bonds_.push_back({ a, b, order });
  const int idx = num_bonds() - 1;
  adj_[a].push_back({ b, idx });
  adj_[b].push_back({ a, idx });
  return idx;
}

int Molecule::find_bond(int a, int b) const {
  for (const Neighbor &nb: adj_[a])
    if (nb.atom == b)
      return nb.bond;
  return -1;
}

std::vector<std::vector<int>> Molecule::components() const {
  std::vector<int> comp(size(), -1);
  std::vector<std::vector<int>> result;
  std::vector<int> stack;
  for (int seed = 0; seed < size(); ++seed) {
    if (comp[seed] >= 0)
      continue;
    const int id = static_cast<int>(result.size());
    result.emplace_back();
    stack.push_back(seed);
    comp[seed] = id;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      result[id].push_back(a);
      for (const Neighbor &nb: adj_[a]) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = id;
          stack.push_back(nb.atom);
        }
      }
    }
    std::sort(result[id].begin(), result[id].end());
  }
  return result;
}

Molecule Molecule::subgraph(std::span<const int> atoms) const {
  std::vector<int> remap(size(), -1);
  Molecule sub;
  for (int a: atoms)
    remap[a] = sub.add_atom(atoms_[a]);
  for (const Bond &b: bonds_)
    if (remap[b.begin] >= 0 && remap[b.end] >= 0)
      sub.add_bond(remap[b.begin], remap[b.end], b.order);
  return sub;
}

void Molecule::clear_atom_maps() {
  for (Atom &a: atoms_)
    a.atom_map = 0;
}

int doubled_bond_valence(const Molecule &mol, int atom) {
  int sum = 0;
  for (const Neighbor &nb: mol.neighbors(atom))
    sum += doubled_valence(mol.bond(nb.bond).order);
  return sum;
}

int aromatic_bond_count(const Molecule &mol, int atom) {
  int n = 0;
  for (const Neighbor &nb: mol.neighbors(atom))
    n += mol.bond(nb.bond).order == BondOrder::kAromatic ? 1 : 0;
  return n;
}

int default_hcount(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  const auto valences = charged_valences(a.atomic_number, a.charge);
  if (valences.empty())
    return 0;

  int sum = 0;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    const BondOrder order = mol.bond(nb.bond).order;
    sum += order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
  }

  if (a.aromatic) {
    // Only the lowest valence applies to aromatic atoms; one unit goes to the
    // pi system. Pyrrole-type donors are written with explicit H.
    const int h = valences.front() - sum - 1;
    if (sum > valences.back())
      return -1;
    return std::max(h, 0);
  }

  for (int v: valences)
    if (v >= sum)
      return v - sum;
  return -1;
}

int max_valence(const Atom &atom) {
  if (!is_known_element(atom.atomic_number))
    return -1;
  const auto valences = charged_valences(atom.atomic_number, atom.charge);
  return valences.empty() ? -1 : valences.back();
}

bool exceeds_valence(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  const int limit = max_valence(a);
  if (limit < 0)
    return false;

  int sum = a.hcount;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    const BondOrder order = mol.bond(nb.bond).order;
    // Aromatic bonds are checked leniently (one unit each).
    sum += order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
  }
  return sum > limit;
}

int heavy_atom_count(const Molecule &mol) {
  return static_cast<int>(std::count_if(
      mol.atoms().begin(), mol.atoms().end(),
      [](const Atom &a) { return a.atomic_number != 1; }));
}

double molecular_weight(const Molecule &mol) {
  double w = 0;
  for (const Atom &a: mol.atoms())
    w += element(a.atomic_number).weight + a.hcount * kHydrogenWeight;
  return w;
}

}  // namespace retro
