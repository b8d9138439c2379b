//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Internal graph machinery shared by the SMILES and SMARTS code paths:
// refinement ranking, DFS line-notation emission and backtracking subgraph
// embedding. Graph types expose size(), num_bonds(), neighbors(i) and
// find_bond(a, b).

#ifndef RETRO_SRC_GRAPH_UTIL_H_
#define RETRO_SRC_GRAPH_UTIL_H_

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "retro/molecule.h"

namespace retro::internal {

// Ranks elements by key; equal keys share the rank of their first sorted
// position. Returns the number of classes.
template <class Key>
int rank_by_keys(const std::vector<Key> &keys, std::vector<int> &ranks) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  int classes = 0;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || keys[order[i]] != keys[order[i - 1]]) {
      ranks[order[i]] = i;
      ++classes;
    } else {
      ranks[order[i]] = ranks[order[i - 1]];
    }
  }
  return classes;
}

// Iterative neighborhood refinement until the partition stabilizes.
template <class Graph, class BondCode>
int refine_ranks(const Graph &g, BondCode bond_code, std::vector<int> &ranks,
                 int classes) {
  const int n = g.size();
  using Key = std::pair<int, std::vector<long long>>;
  std::vector<Key> keys(n);
  while (true) {
    for (int a = 0; a < n; ++a) {
      keys[a].first = ranks[a];
      auto &env = keys[a].second;
      env.clear();
      for (const Neighbor &nb: g.neighbors(a))
        env.push_back(static_cast<long long>(ranks[nb.atom]) * 64
                      + bond_code(nb.bond));
      std::sort(env.begin(), env.end());
    }
    const int next = rank_by_keys(keys, ranks);
    if (next == classes)
      return classes;
    classes = next;
  }
}

// Full canonical ordering: refinement, then repeated tie breaking of the
// lowest tied class by its lowest-index member.
template <class Graph, class Key, class BondCode>
std::vector<int> canonical_order(const Graph &g, const std::vector<Key> &inv,
                                 BondCode bond_code) {
  const int n = g.size();
  std::vector<int> ranks(n, 0);
  if (n == 0)
    return ranks;
  int classes = rank_by_keys(inv, ranks);
  classes = refine_ranks(g, bond_code, ranks, classes);
  while (classes < n) {
    std::vector<int> count(n, 0);
    for (int r: ranks)
      ++count[r];
    const int tied = static_cast<int>(
        std::find_if(count.begin(), count.end(), [](int c) { return c > 1; })
        - count.begin());
    const int chosen = static_cast<int>(
        std::find(ranks.begin(), ranks.end(), tied) - ranks.begin());
    std::vector<std::pair<int, int>> keys(n);
    for (int i = 0; i < n; ++i)
      keys[i] = { ranks[i], i == chosen ? 0 : 1 };
    classes = rank_by_keys(keys, ranks);
    classes = refine_ranks(g, bond_code, ranks, classes);
  }
  return ranks;
}

// Depth-first line notation writer (SMILES/SMARTS). Atoms are visited in
// rank order; ring closures use the lowest free digit, never reused on the
// atom that freed it.
template <class Graph>
class DfsWriter {
public:
  using AtomText = std::function<std::string(int)>;
  using BondText = std::function<std::string(int)>;

  DfsWriter(const Graph &g, const std::vector<int> &ranks, AtomText atom_text,
            BondText bond_text)
      : g_(g), ranks_(ranks), atom_text_(std::move(atom_text)),
        bond_text_(std::move(bond_text)), visited_(g.size(), false),
        children_(g.size()), ring_open_(g.size()), ring_close_(g.size()),
        order_(g.size(), -1), tree_bond_(g.num_bonds(), false),
        ring_bond_(g.num_bonds(), false), digit_of_bond_(g.num_bonds(), -1) { }

  // Components are written in order of their lowest-ranked atom.
  std::string write() {
    std::vector<int> atoms(g_.size());
    std::iota(atoms.begin(), atoms.end(), 0);
    std::sort(atoms.begin(), atoms.end(),
              [&](int a, int b) { return ranks_[a] < ranks_[b]; });
    std::string out;
    for (int start: atoms) {
      if (visited_[start])
        continue;
      plan(start, -1);
      if (!out.empty())
        out += '.';
      emit(start, out);
    }
    return out;
  }

  // Same as write() but returns one string per component.
  std::vector<std::string> write_components() {
    std::vector<int> atoms(g_.size());
    std::iota(atoms.begin(), atoms.end(), 0);
    std::sort(atoms.begin(), atoms.end(),
              [&](int a, int b) { return ranks_[a] < ranks_[b]; });
    std::vector<std::string> parts;
    for (int start: atoms) {
      if (visited_[start])
        continue;
      plan(start, -1);
      std::string out;
      emit(start, out);
      parts.push_back(std::move(out));
    }
    return parts;
  }

  // Atoms in emission order (valid after write()).
  const std::vector<int> &visit_order() const { return visit_order_; }

private:
  void plan(int atom, int parent_bond) {
    visited_[atom] = true;
    order_[atom] = counter_++;
    std::vector<Neighbor> nbrs(g_.neighbors(atom).begin(),
                               g_.neighbors(atom).end());
    std::sort(nbrs.begin(), nbrs.end(), [&](const Neighbor &x, const Neighbor &y) {
      return ranks_[x.atom] < ranks_[y.atom];
    });
    for (const Neighbor &nb: nbrs) {
      if (nb.bond == parent_bond)
        continue;
      if (!visited_[nb.atom]) {
        tree_bond_[nb.bond] = true;
        children_[atom].push_back(nb);
        plan(nb.atom, nb.bond);
      } else if (!tree_bond_[nb.bond] && !ring_bond_[nb.bond]) {
        ring_bond_[nb.bond] = true;
        ring_open_[nb.atom].push_back({ atom, nb.bond });
        ring_close_[atom].push_back({ nb.atom, nb.bond });
      }
    }
  }

  int take_digit() {
    for (int d = 1;; ++d) {
      if (std::find(used_.begin(), used_.end(), d) == used_.end()) {
        used_.push_back(d);
        return d;
      }
    }
  }

  static std::string digit_text(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }

  void emit(int atom, std::string &out) {
    visit_order_.push_back(atom);
    out += atom_text_(atom);

    auto &closes = ring_close_[atom];
    std::sort(closes.begin(), closes.end(),
              [&](const Neighbor &x, const Neighbor &y) {
                return digit_of_bond_[x.bond] < digit_of_bond_[y.bond];
              });
    std::vector<int> freed;
    for (const Neighbor &nb: closes) {
      out += digit_text(digit_of_bond_[nb.bond]);
      freed.push_back(digit_of_bond_[nb.bond]);
    }

    auto &opens = ring_open_[atom];
    std::sort(opens.begin(), opens.end(),
              [&](const Neighbor &x, const Neighbor &y) {
                return order_[x.atom] < order_[y.atom];
              });
    for (const Neighbor &nb: opens) {
      const int d = take_digit();
      digit_of_bond_[nb.bond] = d;
      out += bond_text_(nb.bond);
      out += digit_text(d);
    }
    for (int d: freed)
      std::erase(used_, d);

    const auto &kids = children_[atom];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool branch = i + 1 < kids.size();
      if (branch)
        out += '(';
      out += bond_text_(kids[i].bond);
      emit(kids[i].atom, out);
      if (branch)
        out += ')';
    }
  }

  const Graph &g_;
  const std::vector<int> &ranks_;
  AtomText atom_text_;
  BondText bond_text_;
  std::vector<bool> visited_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> ring_open_;
  std::vector<std::vector<Neighbor>> ring_close_;
  std::vector<int> order_;
  std::vector<bool> tree_bond_;
  std::vector<bool> ring_bond_;
  std::vector<int> digit_of_bond_;
  std::vector<int> used_;
  std::vector<int> visit_order_;
  int counter_ = 0;
};

// Backtracking subgraph embedding (VF2-style candidate pruning through
// already-mapped neighbors). Calls `on_match(mapping)` for every injective
// embedding of `pattern` into `target`; stops early when it returns false.
template <class Pattern, class Target, class AtomOk, class BondOk, class OnMatch>
void enumerate_embeddings(const Pattern &pattern, const Target &target,
                          AtomOk atom_ok, BondOk bond_ok, OnMatch on_match) {
  const int np = pattern.size();
  const int nt = target.size();
  if (np == 0 || np > nt)
    return;

  // Candidate lists per pattern atom.
  std::vector<std::vector<int>> candidates(np);
  for (int p = 0; p < np; ++p)
    for (int t = 0; t < nt; ++t)
      if (atom_ok(p, t))
        candidates[p].push_back(t);
  for (const auto &c: candidates)
    if (c.empty())
      return;

  // Matching order: each component starts at its most selective atom, then
  // grows breadth-first so later atoms have a mapped anchor.
  std::vector<int> order, anchor(np, -1);
  std::vector<bool> placed(np, false);
  while (static_cast<int>(order.size()) < np) {
    int seed = -1;
    for (int p = 0; p < np; ++p)
      if (!placed[p]
          && (seed < 0 || candidates[p].size() < candidates[seed].size()))
        seed = p;
    placed[seed] = true;
    std::size_t head = order.size();
    order.push_back(seed);
    while (head < order.size()) {
      const int u = order[head++];
      for (const Neighbor &nb: pattern.neighbors(u)) {
        if (!placed[nb.atom]) {
          placed[nb.atom] = true;
          anchor[nb.atom] = u;
          order.push_back(nb.atom);
        }
      }
    }
  }

  std::vector<int> mapping(np, -1);
  std::vector<bool> used(nt, false);
  bool stop = false;

  std::function<void(int)> step = [&](int depth) {
    if (stop)
      return;
    if (depth == np) {
      if (!on_match(mapping))
        stop = true;
      return;
    }
    const int p = order[depth];

    auto try_target = [&](int t) {
      if (used[t] || !atom_ok(p, t))
        return;
      for (const Neighbor &nb: pattern.neighbors(p)) {
        const int mt = mapping[nb.atom];
        if (mt < 0)
          continue;
        const int tb = target.find_bond(t, mt);
        if (tb < 0 || !bond_ok(nb.bond, tb))
          return;
      }
      mapping[p] = t;
      used[t] = true;
      step(depth + 1);
      used[t] = false;
      mapping[p] = -1;
    };

    if (anchor[p] >= 0) {
      std::vector<int> nbrs;
      for (const Neighbor &nb: target.neighbors(mapping[anchor[p]]))
        nbrs.push_back(nb.atom);
      std::sort(nbrs.begin(), nbrs.end());
      for (int t: nbrs) {
        try_target(t);
        if (stop)
          return;
      }
    } else {
      for (int t: candidates[p]) {
        try_target(t);
        if (stop)
          return;
      }
    }
  };
  step(0);
}

}  // namespace retro::internal

#endif  // RETRO_SRC_GRAPH_UTIL_H_
