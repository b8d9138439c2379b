//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_SMILES_H_
#define RETRO_SMILES_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "retro/molecule.h"

namespace retro {

class SmilesError: public std::runtime_error {
public:
  enum class Kind {
    kUnclosedRing,
    kUnbalancedParentheses,
    kUnknownSymbol,
    kValenceViolation,
    kMalformed,
  };

  SmilesError(Kind kind, std::size_t position, const std::string &what);

  Kind kind() const noexcept { return kind_; }
  // Zero-based character offset of the offending token.
  std::size_t position() const noexcept { return position_; }

private:
  Kind kind_;
  std::size_t position_;
};

// Parses the organic subset, bracket atoms, charges, ring closures (including
// %nn), branches, aromatic lowercase atoms and atom maps. Stereo markers are
// discarded with a warning. Kekule rings are normalized to aromatic form.
Molecule parse_smiles(std::string_view text);

// Atom ranks used for canonical output: iterative neighborhood refinement
// followed by tie breaking. Ranks are a permutation of 0..n-1.
std::vector<int> canonical_ranks(const Molecule &mol, bool use_atom_maps = false);

// Writes SMILES visiting atoms in `ranks` order (lowest first). Any
// permutation yields a valid spelling of the same graph.
std::string write_smiles(const Molecule &mol, std::span<const int> ranks,
                         bool atom_maps = false);

// Canonical SMILES without atom maps.
std::string canonical_smiles(const Molecule &mol);
std::string canonical_smiles(std::string_view smiles);

// Canonical SMILES keeping atom maps (maps take part in ranking).
std::string mapped_smiles(const Molecule &mol);

}  // namespace retro

#endif  // RETRO_SMILES_H_
