//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/element.h"

#include <array>
#include <stdexcept>
#include <string>

namespace retro {
namespace {

constexpr int kNone[] = { 0 };
constexpr int kV1[] = { 1 };
constexpr int kV2[] = { 2 };
constexpr int kV3[] = { 3 };
constexpr int kV4[] = { 4 };
constexpr int kV35[] = { 3, 5 };
constexpr int kV246[] = { 2, 4, 6 };
constexpr int kV1357[] = { 1, 3, 5, 7 };

constexpr std::span<const int> none() { return { kNone, 0 }; }

// Standard atomic weights (IUPAC abridged, conventional values).
const std::array kElements = {
  Element { 0, "*", 0.0, none() },
  Element { 1, "H", 1.008, kV1 },
  Element { 2, "He", 4.0026, none() },
  Element { 3, "Li", 6.94, kV1 },
  Element { 4, "Be", 9.0122, kV2 },
  Element { 5, "B", 10.81, kV3 },
  Element { 6, "C", 12.011, kV4 },
  Element { 7, "N", 14.007, kV35 },
  Element { 8, "O", 15.999, kV2 },
  Element { 9, "F", 18.998, kV1 },
  Element { 10, "Ne", 20.180, none() },
  Element { 11, "Na", 22.990, kV1 },
  Element { 12, "Mg", 24.305, kV2 },
  Element { 13, "Al", 26.982, kV3 },
  Element { 14, "Si", 28.085, kV4 },
  Element { 15, "P", 30.974, kV35 },
  Element { 16, "S", 32.06, kV246 },
  Element { 17, "Cl", 35.45, kV1357 },
  Element { 18, "Ar", 39.948, none() },
  Element { 19, "K", 39.098, kV1 },
  Element { 20, "Ca", 40.078, kV2 },
  Element { 21, "Sc", 44.956, none() },
  Element { 22, "Ti", 47.867, none() },
  Element { 23, "V", 50.942, none() },
  Element { 24, "Cr", 51.996, none() },
  Element { 25, "Mn", 54.938, none() },
  Element { 26, "Fe", 55.845, none() },
  Element { 27, "Co", 58.933, none() },
  Element { 28, "Ni", 58.693, none() },
  Element { 29, "Cu", 63.546, none() },
  Element { 30, "Zn", 65.38, none() },
  Element { 31, "Ga", 69.723, kV3 },
  Element { 32, "Ge", 72.630, kV4 },
  Element { 33, "As", 74.922, kV35 },
  Element { 34, "Se", 78.971, kV246 },
  Element { 35, "Br", 79.904, kV1357 },
  Element { 36, "Kr", 83.798, none() },
  Element { 37, "Rb", 85.468, kV1 },
  Element { 38, "Sr", 87.62, kV2 },
  Element { 39, "Y", 88.906, none() },
  Element { 40, "Zr", 91.224, none() },
  Element { 41, "Nb", 92.906, none() },
  Element { 42, "Mo", 95.95, none() },
  Element { 43, "Tc", 98.0, none() },
  Element { 44, "Ru", 101.07, none() },
  Element { 45, "Rh", 102.91, none() },
  Element { 46, "Pd", 106.42, none() },
  Element { 47, "Ag", 107.87, none() },
  Element { 48, "Cd", 112.41, none() },
  Element { 49, "In", 114.82, kV3 },
  Element { 50, "Sn", 118.71, kV4 },
  Element { 51, "Sb", 121.76, kV35 },
  Element { 52, "Te", 127.60, kV246 },
  Element { 53, "I", 126.90, kV1357 },
  Element { 54, "Xe", 131.29, none() },
  Element { 55, "Cs", 132.91, kV1 },
  Element { 56, "Ba", 137.33, kV2 },
};

// Heavier elements that occasionally show up in reagents.
const std::array kHeavy = {
  Element { 78, "Pt", 195.08, none() },
  Element { 79, "Au", 196.97, none() },
  Element { 80, "Hg", 200.59, none() },
  Element { 82, "Pb", 207.2, none() },
  Element { 83, "Bi", 208.98, none() },
};

}  // namespace

const Element *find_element(std::string_view symbol) noexcept {
  for (const Element &e: kElements)
    if (e.symbol == symbol)
      return &e;
  for (const Element &e: kHeavy)
    if (e.symbol == symbol)
      return &e;
  return nullptr;
}

bool is_known_element(int atomic_number) noexcept {
  if (atomic_number >= 0
      && atomic_number < static_cast<int>(kElements.size()))
    return true;
  for (const Element &e: kHeavy)
    if (e.atomic_number == atomic_number)
      return true;
  return false;
}

const Element &element(int atomic_number) {
  if (atomic_number >= 0
      && atomic_number < static_cast<int>(kElements.size()))
    return kElements[atomic_number];
  for (const Element &e: kHeavy)
    if (e.atomic_number == atomic_number)
      return e;
  throw std::out_of_range("unknown atomic number "
                          + std::to_string(atomic_number));
}

std::span<const int> charged_valences(int atomic_number, int charge) {
  if (charge == 0)
    return element(atomic_number).valences;

  // Only main-group elements with a covalent valence model take part.
  const int shifted = atomic_number - charge;
  auto in_block = [](int z) {
    return (z >= 5 && z <= 9) || (z >= 13 && z <= 17) || (z >= 31 && z <= 35)
           || (z >= 49 && z <= 53);
  };
  if (!in_block(atomic_number) || !in_block(shifted))
    return none();
  // Stay within one period: C- ~ N, but Si+ is not modelled as Al.
  auto period = [](int z) { return z <= 10 ? 2 : z <= 18 ? 3 : z <= 36 ? 4 : 5; };
  if (period(atomic_number) != period(shifted))
    return none();
  return element(shifted).valences;
}

bool is_organic_subset(int atomic_number) noexcept {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 9:
  case 15:
  case 16:
  case 17:
  case 35:
  case 53:
    return true;
  default:
    return false;
  }
}

bool has_aromatic_symbol(int atomic_number) noexcept {
  switch (atomic_number) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
  case 52:
    return true;
  default:
    return false;
  }
}

}  // namespace retro
