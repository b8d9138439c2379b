//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/rings.h"

#include <algorithm>
#include <functional>

namespace retro {

std::vector<bool> ring_bond_flags(const Molecule &mol) {
  // Tarjan bridge finding; every non-bridge bond is a ring bond.
  const int n = mol.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> ring(mol.num_bonds(), true);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent_bond) {
    disc[u] = low[u] = timer++;
    for (const Neighbor &nb: mol.neighbors(u)) {
      if (nb.bond == parent_bond)
        continue;
      if (disc[nb.atom] < 0) {
        dfs(nb.atom, nb.bond);
        low[u] = std::min(low[u], low[nb.atom]);
        if (low[nb.atom] > disc[u])
          ring[nb.bond] = false;
      } else {
        low[u] = std::min(low[u], disc[nb.atom]);
      }
    }
  };
  for (int i = 0; i < n; ++i)
    if (disc[i] < 0)
      dfs(i, -1);
  return ring;
}

std::vector<bool> ring_atom_flags(const Molecule &mol) {
  const auto bonds = ring_bond_flags(mol);
  std::vector<bool> atoms(mol.size(), false);
  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (bonds[b]) {
      atoms[mol.bond(b).begin] = true;
      atoms[mol.bond(b).end] = true;
    }
  }
  return atoms;
}

std::vector<std::vector<int>> small_cycles(const Molecule &mol,
                                           int max_size) {
  std::vector<std::vector<int>> cycles;
  const auto ring_bond = ring_bond_flags(mol);
  std::vector<int> path;
  std::vector<bool> on_path(mol.size(), false);

  std::function<void(int)> extend = [&](int start) {
    const int u = path.back();
    for (const Neighbor &nb: mol.neighbors(u)) {
      if (!ring_bond[nb.bond])
        continue;
      const int v = nb.atom;
      if (v == start && path.size() >= 3) {
        // Each cycle is seen in both directions; keep one.
        if (path[1] < path.back())
          cycles.push_back(path);
        continue;
      }
      if (v <= start || on_path[v]
          || static_cast<int>(path.size()) >= max_size)
        continue;
      path.push_back(v);
      on_path[v] = true;
      extend(start);
      on_path[v] = false;
      path.pop_back();
    }
  };

  for (int s = 0; s < mol.size(); ++s) {
    path.assign(1, s);
    on_path[s] = true;
    extend(s);
    on_path[s] = false;
  }
  return cycles;
}

namespace {

enum class PiRole { kNone, kOne, kDonor };

PiRole pi_role(const Molecule &mol, int atom, const std::vector<bool> &in_ring,
               const std::vector<int> &cycle) {
  const Atom &a = mol.atom(atom);
  int doubles = 0, aromatic = 0, ring_double = 0;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    const BondOrder order = mol.bond(nb.bond).order;
    if (order == BondOrder::kDouble) {
      ++doubles;
      if (in_ring[nb.atom])
        ++ring_double;
    } else if (order == BondOrder::kAromatic) {
      ++aromatic;
    } else if (order == BondOrder::kTriple) {
      return PiRole::kNone;
    }
  }

  const int z = a.atomic_number;
  const int connections = mol.degree(atom) + a.hcount;
  const bool donor_shape = (z == 7 && a.charge == 0 && connections == 3)
                           || ((z == 8 || z == 16) && a.charge == 0
                               && mol.degree(atom) == 2 && a.hcount == 0);

  if (a.aromatic && aromatic > 0 && doubles == 0) {
    if (donor_shape)
      return PiRole::kDonor;
    return (z == 6 || z == 7) ? PiRole::kOne : PiRole::kNone;
  }

  if (doubles == 1 && ring_double == 1) {
    if (z == 6 && a.charge == 0)
      return PiRole::kOne;
    if (z == 7 && (a.charge == 0 || a.charge == 1))
      return PiRole::kOne;
    return PiRole::kNone;
  }

  if (doubles == 0 && aromatic == 0 && donor_shape) {
    // Donor must sit in the ring through exactly two ring bonds.
    int ring_nbrs = 0;
    for (const Neighbor &nb: mol.neighbors(atom))
      ring_nbrs += std::find(cycle.begin(), cycle.end(), nb.atom)
                           != cycle.end()
                       ? 1
                       : 0;
    return ring_nbrs == 2 ? PiRole::kDonor : PiRole::kNone;
  }
  return PiRole::kNone;
}

}  // namespace

void perceive_aromaticity(Molecule &mol) {
  auto cycles = small_cycles(mol, 6);
  std::erase_if(cycles, [](const auto &c) { return c.size() < 5; });
  if (cycles.empty())
    return;
  std::stable_sort(cycles.begin(), cycles.end(),
                   [](const auto &x, const auto &y) {
                     return x.size() > y.size();
                   });

  std::vector<bool> in_ring(mol.size(), false);
  for (const auto &c: cycles)
    for (int a: c)
      in_ring[a] = true;

  std::vector<bool> done(cycles.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      if (done[ci])
        continue;
      const auto &cycle = cycles[ci];
      const int n = static_cast<int>(cycle.size());

      std::vector<int> ring_bond_idx;
      bool all_aromatic = true;
      for (int i = 0; i < n; ++i) {
        const int b = mol.find_bond(cycle[i], cycle[(i + 1) % n]);
        ring_bond_idx.push_back(b);
        all_aromatic &= mol.bond(b).order == BondOrder::kAromatic;
      }
      if (all_aromatic) {
        done[ci] = true;
        continue;
      }

      int ones = 0, donors = 0;
      for (int a: cycle) {
        switch (pi_role(mol, a, in_ring, cycle)) {
        case PiRole::kOne:
          ++ones;
          break;
        case PiRole::kDonor:
          ++donors;
          break;
        case PiRole::kNone:
          break;
        }
      }
      const bool aromatic = (n == 6 && ones == 6)
                            || (n == 5 && ones == 4 && donors == 1);
      if (!aromatic)
        continue;

      for (int a: cycle)
        mol.mutable_atom(a).aromatic = true;
      for (int b: ring_bond_idx)
        mol.set_bond_order(b, BondOrder::kAromatic);
      done[ci] = true;
      changed = true;
    }
  }
}

}  // namespace retro
