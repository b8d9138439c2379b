//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_FINGERPRINT_H_
#define RETRO_FINGERPRINT_H_

#include <cstdint>
#include <vector>

#include "retro/molecule.h"

namespace retro {

class BitVector {
public:
  explicit BitVector(int nbits = 0)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) { }

  int size() const noexcept { return nbits_; }
  void set(int i) { words_[i / 64] |= std::uint64_t { 1 } << (i % 64); }
  bool test(int i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  int popcount() const noexcept;

  friend bool operator==(const BitVector &, const BitVector &) = default;

private:
  int nbits_;
  std::vector<std::uint64_t> words_;
};

// Circular (ECFP-style) fingerprint. Each distinct atom environment up to
// `radius` bonds is hashed and folded into `nbits` bits; environments that
// cover an identical bond set are counted once.
// Throws std::invalid_argument for radius < 0 or nbits not a power of two.
BitVector morgan_fingerprint(const Molecule &mol, int radius = 2,
                             int nbits = 1024);

// Number of distinct environments the fingerprint hashes (upper bound for
// its popcount).
int morgan_environment_count(const Molecule &mol, int radius = 2);

double tanimoto(const BitVector &a, const BitVector &b);

}  // namespace retro

#endif  // RETRO_FINGERPRINT_H_
