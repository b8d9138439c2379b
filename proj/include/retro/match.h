//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_MATCH_H_
#define RETRO_MATCH_H_

#include <vector>

#include "retro/molecule.h"
#include "retro/smarts.h"

namespace retro {

// Pattern atom index -> molecule atom index.
using Match = std::vector<int>;

// Symmetry class of each pattern atom: atoms related by an automorphism that
// preserves queries, atom maps and bond queries share a class id (the lowest
// atom index of the orbit).
std::vector<int> pattern_symmetry_classes(const PatternGraph &pattern);

// All embeddings of `pattern` in `mol`. Two embeddings are the same match iff
// they cover the same molecule atoms with the same symmetry-class assignment;
// the lexicographically smallest representative is kept. Sorted
// lexicographically.
std::vector<Match> find_matches(const PatternGraph &pattern, const Molecule &mol);

// Undeduplicated embeddings, sorted lexicographically.
std::vector<Match> find_embeddings(const PatternGraph &pattern,
                                   const Molecule &mol);

bool has_match(const PatternGraph &pattern, const Molecule &mol);

}  // namespace retro

#endif  // RETRO_MATCH_H_
