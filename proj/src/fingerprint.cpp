//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/fingerprint.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "retro/rings.h"

namespace retro {

int BitVector::popcount() const noexcept {
  int n = 0;
  for (std::uint64_t w: words_)
    n += std::popcount(w);
  return n;
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over a boost-style combine
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

struct Environment {
  std::uint64_t id;
  std::vector<bool> bonds;
};

// Distinct environment identifiers in discovery order.
std::vector<std::uint64_t> environments(const Molecule &mol, int radius) {
  const int n = mol.size();
  const auto ring = ring_atom_flags(mol);

  std::vector<std::uint64_t> inv(n);
  std::vector<std::vector<bool>> cover(n,
                                       std::vector<bool>(mol.num_bonds(), false));
  std::vector<std::uint64_t> out;
  for (int a = 0; a < n; ++a) {
    const Atom &at = mol.atom(a);
    std::uint64_t h = 0;
    for (int v: { at.atomic_number, mol.degree(a), at.hcount, at.charge + 8,
                  at.isotope, ring[a] ? 1 : 0, at.aromatic ? 1 : 0 })
      h = mix(h, static_cast<std::uint64_t>(v));
    inv[a] = h;
  }
  {
    std::vector<std::uint64_t> sorted = inv;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    out = sorted;
  }

  std::set<std::vector<bool>> seen;
  for (int it = 1; it <= radius; ++it) {
    std::vector<std::uint64_t> next(n);
    std::vector<std::vector<bool>> next_cover = cover;
    for (int a = 0; a < n; ++a) {
      std::vector<std::pair<int, std::uint64_t>> env;
      for (const Neighbor &nb: mol.neighbors(a)) {
        env.emplace_back(static_cast<int>(mol.bond(nb.bond).order), inv[nb.atom]);
        next_cover[a][nb.bond] = true;
        for (int b = 0; b < mol.num_bonds(); ++b)
          if (cover[nb.atom][b])
            next_cover[a][b] = true;
      }
      std::sort(env.begin(), env.end());
      std::uint64_t h = mix(static_cast<std::uint64_t>(it), inv[a]);
      for (const auto &[order, id]: env)
        h = mix(mix(h, static_cast<std::uint64_t>(order)), id);
      next[a] = h;
    }

    // Deterministic under atom renumbering: consider atoms by new id.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return next[x] < next[y]; });
    for (int a: order) {
      if (mol.degree(a) == 0)
        continue;
      if (!seen.insert(next_cover[a]).second)
        continue;
      out.push_back(next[a]);
    }
    inv = std::move(next);
    cover = std::move(next_cover);
  }
  return out;
}

}  // namespace

BitVector morgan_fingerprint(const Molecule &mol, int radius, int nbits) {
  if (radius < 0)
    throw std::invalid_argument("fingerprint radius must be >= 0");
  if (nbits <= 0 || !std::has_single_bit(static_cast<unsigned>(nbits)))
    throw std::invalid_argument("fingerprint size must be a power of two");
  BitVector fp(nbits);
  for (std::uint64_t id: environments(mol, radius))
    fp.set(static_cast<int>(id & static_cast<std::uint64_t>(nbits - 1)));
  return fp;
}

int morgan_environment_count(const Molecule &mol, int radius) {
  auto ids = environments(mol, radius);
  std::sort(ids.begin(), ids.end());
  return static_cast<int>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

double tanimoto(const BitVector &a, const BitVector &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("fingerprint sizes differ");
  int both = 0, either = 0;
  for (int i = 0; i < a.size(); ++i) {
    both += a.test(i) && b.test(i);
    either += a.test(i) || b.test(i);
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / either;
}

}  // namespace retro
