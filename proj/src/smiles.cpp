//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/smiles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "retro/element.h"
#include "retro/log.h"
#include "retro/rings.h"
#include "graph_util.h"

namespace retro {

SmilesError::SmilesError(Kind kind, std::size_t position,
                         const std::string &what)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      kind_(kind), position_(position) { }

namespace {

using Kind = SmilesError::Kind;

struct RingOpen {
  int atom;
  std::optional<BondOrder> order;
  std::size_t position;
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  Molecule parse() {
    if (text_.empty())
      throw SmilesError(Kind::kMalformed, 0, "empty SMILES");

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      switch (c) {
      case '(':
        if (prev_ < 0 || pending_)
          throw SmilesError(Kind::kUnbalancedParentheses, pos_,
                            "branch without preceding atom");
        branches_.push_back({ prev_, pos_ });
        ++pos_;
        break;
      case ')':
        if (branches_.empty())
          throw SmilesError(Kind::kUnbalancedParentheses, pos_,
                            "unmatched ')'");
        if (pending_)
          throw SmilesError(Kind::kMalformed, pos_, "dangling bond");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
        break;
      case '-':
      case '=':
      case '#':
      case ':':
      case '/':
      case '\\':
        read_bond(c);
        break;
      case '.':
        if (pending_)
          throw SmilesError(Kind::kMalformed, pos_, "dangling bond");
        prev_ = -1;
        ++pos_;
        break;
      case '%':
      case '0':
      case '1':
      case '2':
      case '3':
      case '4':
      case '5':
      case '6':
      case '7':
      case '8':
      case '9':
        read_ring_closure();
        break;
      case '[':
        read_bracket_atom();
        break;
      default:
        read_organic_atom();
        break;
      }
    }

    if (!rings_.empty()) {
      auto first = std::min_element(
          rings_.begin(), rings_.end(), [](const auto &x, const auto &y) {
            return x.second.position < y.second.position;
          });
      throw SmilesError(Kind::kUnclosedRing, first->second.position,
                        "ring closure " + std::to_string(first->first)
                            + " never closed");
    }
    if (!branches_.empty())
      throw SmilesError(Kind::kUnbalancedParentheses,
                        branches_.back().second, "unclosed '('");
    if (pending_)
      throw SmilesError(Kind::kMalformed, text_.size(), "dangling bond");
    if (mol_.empty())
      throw SmilesError(Kind::kMalformed, 0, "no atoms");

    finish_hydrogens();
    perceive_aromaticity(mol_);
    if (stereo_)
      log::warn("stereochemistry discarded in '" + std::string(text_) + "'");
    return std::move(mol_);
  }

private:
  void read_bond(char c) {
    if (pending_)
      throw SmilesError(Kind::kMalformed, pos_, "consecutive bond symbols");
    switch (c) {
    case '-':
      pending_ = BondOrder::kSingle;
      break;
    case '=':
      pending_ = BondOrder::kDouble;
      break;
    case '#':
      pending_ = BondOrder::kTriple;
      break;
    case ':':
      pending_ = BondOrder::kAromatic;
      break;
    default:
      stereo_ = true;
      pending_ = BondOrder::kSingle;
      break;
    }
    pending_pos_ = pos_;
    ++pos_;
  }

  void read_ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0)
      throw SmilesError(Kind::kMalformed, pos_, "ring closure before atom");
    int num;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(text_[pos_ + 1])
          || !std::isdigit(text_[pos_ + 2]))
        throw SmilesError(Kind::kMalformed, pos_, "bad %nn ring closure");
      num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      num = text_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_.emplace(num, RingOpen { prev_, pending_, start });
      pending_.reset();
      return;
    }

    const RingOpen open = it->second;
    rings_.erase(it);
    if (open.order && pending_ && *open.order != *pending_)
      throw SmilesError(Kind::kMalformed, start, "conflicting ring bond");
    std::optional<BondOrder> order = pending_ ? pending_ : open.order;
    pending_.reset();
    if (open.atom == prev_ || mol_.find_bond(open.atom, prev_) >= 0)
      throw SmilesError(Kind::kMalformed, start, "invalid ring closure");
    mol_.add_bond(open.atom, prev_, order.value_or(implicit_order(open.atom, prev_)));
  }

  BondOrder implicit_order(int a, int b) const {
    return mol_.atom(a).aromatic && mol_.atom(b).aromatic
               ? BondOrder::kAromatic
               : BondOrder::kSingle;
  }

  void add_atom(const Atom &atom, bool organic, std::size_t at) {
    const int idx = mol_.add_atom(atom);
    organic_.push_back(organic);
    atom_pos_.push_back(at);
    if (prev_ >= 0) {
      mol_.add_bond(prev_, idx, pending_.value_or(implicit_order(prev_, idx)));
      pending_.reset();
    } else if (pending_) {
      throw SmilesError(Kind::kMalformed, pending_pos_, "bond without atom");
    }
    prev_ = idx;
  }

  void read_organic_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    Atom atom;
    std::string_view sym;

    if (c == '*') {
      atom.atomic_number = 0;
      ++pos_;
      add_atom(atom, false, at);
      return;
    }
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      sym = "Cl";
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      sym = "Br";
    } else if (std::string_view("BCNOPSFI").find(c) != std::string_view::npos) {
      sym = text_.substr(pos_, 1);
    } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
      sym = text_.substr(pos_, 1);
      atom.aromatic = true;
    } else {
      throw SmilesError(Kind::kUnknownSymbol, pos_,
                        std::string("unknown symbol '") + c + "'");
    }

    std::string upper(sym);
    upper[0] = static_cast<char>(std::toupper(upper[0]));
    atom.atomic_number = find_element(upper)->atomic_number;
    pos_ += sym.size();
    add_atom(atom, true, at);
  }

  void read_bracket_atom() {
    const std::size_t at = pos_;
    const std::size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos)
      throw SmilesError(Kind::kMalformed, pos_, "unterminated bracket atom");
    std::size_t i = pos_ + 1;
    Atom atom;

    auto digits = [&](int &out) {
      const std::size_t s = i;
      out = 0;
      while (i < close && std::isdigit(text_[i]))
        out = out * 10 + (text_[i++] - '0');
      return i > s;
    };

    digits(atom.isotope);

    // Element or aromatic symbol.
    if (i >= close)
      throw SmilesError(Kind::kUnknownSymbol, i, "missing element symbol");
    if (text_[i] == '*') {
      atom.atomic_number = 0;
      ++i;
    } else if (std::islower(text_[i])) {
      static constexpr std::string_view kTwo[] = { "se", "as", "te" };
      bool found = false;
      for (std::string_view s: kTwo) {
        if (text_.substr(i, 2) == s) {
          std::string up(s);
          up[0] = static_cast<char>(std::toupper(up[0]));
          atom.atomic_number = find_element(up)->atomic_number;
          i += 2;
          found = true;
          break;
        }
      }
      if (!found) {
        if (std::string_view("bcnops").find(text_[i]) == std::string_view::npos)
          throw SmilesError(Kind::kUnknownSymbol, i,
                            std::string("unknown aromatic symbol '")
                                + text_[i] + "'");
        std::string up(1, static_cast<char>(std::toupper(text_[i])));
        atom.atomic_number = find_element(up)->atomic_number;
        ++i;
      }
      atom.aromatic = true;
    } else if (std::isupper(text_[i])) {
      const Element *e = nullptr;
      if (i + 1 < close && std::islower(text_[i + 1]))
        e = find_element(text_.substr(i, 2));
      if (e != nullptr) {
        i += 2;
      } else {
        e = find_element(text_.substr(i, 1));
        if (e == nullptr)
          throw SmilesError(Kind::kUnknownSymbol, i,
                            "unknown element in '"
                                + std::string(text_.substr(at, close - at + 1))
                                + "'");
        ++i;
      }
      atom.atomic_number = e->atomic_number;
    } else {
      throw SmilesError(Kind::kUnknownSymbol, i,
                        std::string("unexpected '") + text_[i] + "'");
    }

    // Chirality: @, @@, @TH1, @SP2, ...
    if (i < close && text_[i] == '@') {
      stereo_ = true;
      while (i < close && text_[i] == '@')
        ++i;
      if (i + 1 < close && std::isupper(text_[i]) && std::isupper(text_[i + 1])) {
        i += 2;
        int dummy;
        digits(dummy);
      }
    }

    if (i < close && text_[i] == 'H') {
      ++i;
      if (!digits(atom.hcount))
        atom.hcount = 1;
    }

    if (i < close && (text_[i] == '+' || text_[i] == '-')) {
      const char sign = text_[i];
      const int unit = sign == '+' ? 1 : -1;
      ++i;
      int mag;
      if (digits(mag)) {
        atom.charge = unit * mag;
      } else {
        atom.charge = unit;
        while (i < close && text_[i] == sign) {
          atom.charge += unit;
          ++i;
        }
      }
    }

    if (i < close && text_[i] == ':') {
      ++i;
      if (!digits(atom.atom_map))
        throw SmilesError(Kind::kMalformed, i, "empty atom map");
    }

    if (i != close)
      throw SmilesError(Kind::kUnknownSymbol, i,
                        "unexpected '" + std::string(1, text_[i])
                            + "' in bracket atom");
    pos_ = close + 1;
    add_atom(atom, false, at);
  }

  void finish_hydrogens() {
    for (int i = 0; i < mol_.size(); ++i) {
      if (organic_[i]) {
        const int h = default_hcount(mol_, i);
        if (h < 0)
          throw SmilesError(Kind::kValenceViolation, atom_pos_[i],
                            "valence exceeded");
        mol_.mutable_atom(i).hcount = h;
      } else if (exceeds_valence(mol_, i)) {
        throw SmilesError(Kind::kValenceViolation, atom_pos_[i],
                          "valence exceeded");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  std::vector<bool> organic_;
  std::vector<std::size_t> atom_pos_;
  int prev_ = -1;
  std::optional<BondOrder> pending_;
  std::size_t pending_pos_ = 0;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::map<int, RingOpen> rings_;
  bool stereo_ = false;
};

// ---------------------------------------------------------------------------
// Writer

std::string atom_text(const Molecule &mol, int idx, bool maps) {
  const Atom &a = mol.atom(idx);
  const int map = maps ? a.atom_map : 0;
  const bool organic = is_organic_subset(a.atomic_number)
                       && (!a.aromatic || has_aromatic_symbol(a.atomic_number));

  std::string sym(a.atomic_number == 0 ? "*" : element(a.atomic_number).symbol);
  if (a.aromatic && a.atomic_number != 0)
    sym[0] = static_cast<char>(std::tolower(sym[0]));

  if (a.charge == 0 && a.isotope == 0 && map == 0) {
    if (organic && default_hcount(mol, idx) == a.hcount)
      return sym;
    if (a.atomic_number == 0 && a.hcount == 0)
      return sym;
  }

  std::string out = "[";
  if (a.isotope > 0)
    out += std::to_string(a.isotope);
  out += sym;
  if (a.hcount > 0) {
    out += 'H';
    if (a.hcount > 1)
      out += std::to_string(a.hcount);
  }
  if (a.charge != 0) {
    out += a.charge > 0 ? '+' : '-';
    if (std::abs(a.charge) > 1)
      out += std::to_string(std::abs(a.charge));
  }
  if (map > 0)
    out += ":" + std::to_string(map);
  out += ']';
  return out;
}

std::string bond_text(const Molecule &mol, const Bond &b) {
  const bool both_aromatic = mol.atom(b.begin).aromatic && mol.atom(b.end).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  }
  return "";
}

}  // namespace

Molecule parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::vector<int> canonical_ranks(const Molecule &mol, bool use_atom_maps) {
  const int n = mol.size();
  const auto in_ring = ring_atom_flags(mol);

  using Inv = std::tuple<int, int, int, int, int, int, int, int>;
  std::vector<Inv> inv(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    inv[i] = { a.atomic_number, a.isotope,      a.charge,
               mol.degree(i),   a.hcount,       a.aromatic ? 1 : 0,
               in_ring[i] ? 1 : 0, use_atom_maps ? a.atom_map : 0 };
  }
  return internal::canonical_order(mol, inv, [&](int b) {
    return static_cast<int>(mol.bond(b).order);
  });
}

std::string write_smiles(const Molecule &mol, std::span<const int> ranks,
                         bool atom_maps) {
  const std::vector<int> r(ranks.begin(), ranks.end());
  internal::DfsWriter<Molecule> writer(
      mol, r, [&](int a) { return atom_text(mol, a, atom_maps); },
      [&](int b) { return bond_text(mol, mol.bond(b)); });
  return writer.write();
}

std::string canonical_smiles(const Molecule &mol) {
  const auto ranks = canonical_ranks(mol, false);
  return write_smiles(mol, ranks, false);
}

std::string canonical_smiles(std::string_view smiles) {
  return canonical_smiles(parse_smiles(smiles));
}

std::string mapped_smiles(const Molecule &mol) {
  const auto ranks = canonical_ranks(mol, true);
  return write_smiles(mol, ranks, true);
}

}  // namespace retro
