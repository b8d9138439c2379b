//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/match.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "graph_util.h"

namespace retro {

namespace {

template <class OnMatch>
void embed(const PatternGraph &pattern, const Molecule &mol, OnMatch on_match) {
  internal::enumerate_embeddings(
      pattern, mol,
      [&](int p, int t) {
        return mol.degree(t) >= pattern.degree(p)
               && pattern.atom(p).query.matches(mol, t);
      },
      [&](int pb, int tb) { return pattern.bond(pb).matches(mol.bond(tb).order); },
      on_match);
}

int find_root(std::vector<int> &parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<int> pattern_symmetry_classes(const PatternGraph &pattern) {
  const int n = pattern.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  internal::enumerate_embeddings(
      pattern, pattern,
      [&](int p, int q) {
        const PatternAtom &a = pattern.atom(p), &b = pattern.atom(q);
        return a.atom_map == b.atom_map && pattern.degree(p) == pattern.degree(q)
               && a.query == b.query;
      },
      [&](int pb, int qb) { return pattern.bond(pb).mask == pattern.bond(qb).mask; },
      [&](const std::vector<int> &perm) {
        for (int i = 0; i < n; ++i) {
          const int a = find_root(parent, i), b = find_root(parent, perm[i]);
          if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
        }
        return true;
      });
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i)
    cls[i] = find_root(parent, i);
  return cls;
}

std::vector<Match> find_embeddings(const PatternGraph &pattern,
                                   const Molecule &mol) {
  std::vector<Match> out;
  embed(pattern, mol, [&](const std::vector<int> &m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Match> find_matches(const PatternGraph &pattern, const Molecule &mol) {
  const std::vector<int> cls = pattern_symmetry_classes(pattern);
  std::map<std::vector<std::pair<int, int>>, Match> unique;
  embed(pattern, mol, [&](const std::vector<int> &m) {
    std::vector<std::pair<int, int>> key(m.size());
    for (std::size_t p = 0; p < m.size(); ++p)
      key[p] = { m[p], cls[p] };
    std::sort(key.begin(), key.end());
    auto [it, fresh] = unique.emplace(std::move(key), m);
    if (!fresh && m < it->second)
      it->second = m;
    return true;
  });
  std::vector<Match> out;
  out.reserve(unique.size());
  for (auto &[key, m]: unique)
    out.push_back(std::move(m));
  std::sort(out.begin(), out.end());
  return out;
}

bool has_match(const PatternGraph &pattern, const Molecule &mol) {
  bool found = false;
  embed(pattern, mol, [&](const std::vector<int> &) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace retro
