//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_STOCK_H_
#define RETRO_STOCK_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "retro/molecule.h"

namespace retro {

// Purchasable molecules keyed by canonical SMILES.
class StockSet {
public:
  StockSet() = default;

  // Canonicalizes before inserting; returns false for duplicates.
  bool add(std::string_view smiles);
  bool add(const Molecule &mol);
  // Inserts an already canonical string.
  bool add_canonical(std::string smiles);

  bool contains(const Molecule &mol) const;
  bool contains_canonical(const std::string &smiles) const {
    return items_.contains(smiles);
  }

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  std::vector<std::string> sorted() const;

private:
  std::unordered_set<std::string> items_;
};

// Stock sizes of the published benchmarks; informational only.
namespace reference_stock {
inline constexpr int kN1 = 13432;
inline constexpr int kN5 = 13326;
}  // namespace reference_stock

}  // namespace retro

#endif  // RETRO_STOCK_H_
