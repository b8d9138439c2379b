//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_ELEMENT_H_
#define RETRO_ELEMENT_H_

#include <span>
#include <string_view>

namespace retro {

struct Element {
  int atomic_number;
  std::string_view symbol;
  double weight;
  // Default valences in ascending order; empty when the element has no
  // standard valence model (metals, noble gases).
  std::span<const int> valences;
};

// Atomic number 0 is the dummy atom "*".
const Element *find_element(std::string_view symbol) noexcept;
const Element &element(int atomic_number);
bool is_known_element(int atomic_number) noexcept;

// Valences for an atom with a formal charge, following the isoelectronic
// rule (N+ behaves like C, O- like F, ...). Returns an empty span when no
// model is available.
std::span<const int> charged_valences(int atomic_number, int charge);

// Atoms that may be written without brackets in SMILES.
bool is_organic_subset(int atomic_number) noexcept;
// Atoms that have a lowercase aromatic spelling.
bool has_aromatic_symbol(int atomic_number) noexcept;

inline constexpr double kHydrogenWeight = 1.008;

}  // namespace retro

#endif  // RETRO_ELEMENT_H_
