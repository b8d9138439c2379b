//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/stock.h"

#include <algorithm>

#include "retro/smiles.h"

namespace retro {

bool StockSet::add(std::string_view smiles) {
  return add_canonical(canonical_smiles(smiles));
}

bool StockSet::add(const Molecule &mol) {
  return add_canonical(canonical_smiles(mol));
}

bool StockSet::add_canonical(std::string smiles) {
  return items_.insert(std::move(smiles)).second;
}

bool StockSet::contains(const Molecule &mol) const {
  return items_.contains(canonical_smiles(mol));
}

std::vector<std::string> StockSet::sorted() const {
  std::vector<std::string> out(items_.begin(), items_.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace retro
