//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_RINGS_H_
#define RETRO_RINGS_H_

#include <vector>

#include "retro/molecule.h"

namespace retro {

// Per-bond flag: true if the bond lies on any cycle (i.e. is not a bridge).
std::vector<bool> ring_bond_flags(const Molecule &mol);
std::vector<bool> ring_atom_flags(const Molecule &mol);

// All simple cycles with at most `max_size` atoms, each as an atom sequence
// starting at its smallest atom index. Deterministic order.
std::vector<std::vector<int>> small_cycles(const Molecule &mol, int max_size);

// Normalizes Kekule 5- and 6-membered rings to aromatic form. A 6-ring is
// aromatic when every atom is C/N carrying exactly one double bond into the
// ring system; a 5-ring additionally admits exactly one lone-pair donor
// (NH/NR, O, S). Fused systems are resolved by iterating to a fixed point.
// Hydrogen counts are left unchanged.
void perceive_aromaticity(Molecule &mol);

}  // namespace retro

#endif  // RETRO_RINGS_H_
