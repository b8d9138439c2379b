//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/smarts.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "retro/element.h"
#include "retro/log.h"
#include "retro/rings.h"
#include "graph_util.h"

namespace retro {

SmartsError::SmartsError(Kind kind, std::size_t position, std::string token,
                         const std::string &what)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      kind_(kind), position_(position), token_(std::move(token)) { }

// ---------------------------------------------------------------------------
// Queries

bool AtomPrimitive::matches(const Molecule &mol, int atom) const {
  const Atom &a = mol.atom(atom);
  bool ok = false;
  switch (type) {
  case Type::kAny:
    ok = true;
    break;
  case Type::kSymbol:
    ok = a.atomic_number == value && a.aromatic == aromatic;
    break;
  case Type::kAtomicNumber:
    ok = a.atomic_number == value;
    break;
  case Type::kAromatic:
    ok = a.aromatic;
    break;
  case Type::kAliphatic:
    ok = !a.aromatic;
    break;
  case Type::kHCount: {
    int h = a.hcount;
    for (const Neighbor &nb: mol.neighbors(atom))
      h += mol.atom(nb.atom).atomic_number == 1 ? 1 : 0;
    ok = h == value;
    break;
  }
  case Type::kDegree:
    ok = mol.degree(atom) == value;
    break;
  case Type::kConnectivity:
    ok = mol.degree(atom) + a.hcount == value;
    break;
  case Type::kCharge:
    ok = a.charge == value;
    break;
  case Type::kIsotope:
    ok = a.isotope == value;
    break;
  }
  return ok != negated;
}

std::string AtomPrimitive::to_string() const {
  std::string out = negated ? "!" : "";
  switch (type) {
  case Type::kAny:
    return out + "*";
  case Type::kSymbol: {
    std::string sym(element(value).symbol);
    if (aromatic)
      sym[0] = static_cast<char>(std::tolower(sym[0]));
    return out + sym;
  }
  case Type::kAtomicNumber:
    return out + "#" + std::to_string(value);
  case Type::kAromatic:
    return out + "a";
  case Type::kAliphatic:
    return out + "A";
  case Type::kHCount:
    return out + "H" + std::to_string(value);
  case Type::kDegree:
    return out + "D" + std::to_string(value);
  case Type::kConnectivity:
    return out + "X" + std::to_string(value);
  case Type::kCharge:
    return out + (value < 0 ? "-" : "+") + std::to_string(std::abs(value));
  case Type::kIsotope:
    return out + std::to_string(value);
  }
  return out;
}

namespace {

template <class T, class F>
std::string join(const std::vector<T> &items, char sep, F text) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0)
      out += sep;
    out += text(items[i]);
  }
  return out;
}

}  // namespace

AtomQuery::AtomQuery(std::vector<Disjunction> clauses)
    : clauses_(std::move(clauses)) {
  for (auto &dis: clauses_) {
    for (auto &conj: dis) {
      std::sort(conj.begin(), conj.end());
      conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
    }
    std::sort(dis.begin(), dis.end());
    dis.erase(std::unique(dis.begin(), dis.end()), dis.end());
  }
  std::sort(clauses_.begin(), clauses_.end());
  clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());

  text_ = join(clauses_, ';', [](const Disjunction &dis) {
    return join(dis, ',', [](const Conjunction &conj) {
      return join(conj, '&', [](const AtomPrimitive &p) { return p.to_string(); });
    });
  });
}

bool AtomQuery::matches(const Molecule &mol, int atom) const {
  for (const auto &dis: clauses_) {
    bool any = false;
    for (const auto &conj: dis) {
      bool all = true;
      for (const auto &prim: conj) {
        if (!prim.matches(mol, atom)) {
          all = false;
          break;
        }
      }
      if (all) {
        any = true;
        break;
      }
    }
    if (!any)
      return false;
  }
  return true;
}

std::optional<int> AtomQuery::pinned(AtomPrimitive::Type type) const {
  for (const auto &dis: clauses_) {
    if (dis.size() != 1)
      continue;
    for (const auto &prim: dis.front())
      if (!prim.negated && prim.type == type)
        return prim.value;
  }
  return std::nullopt;
}

std::optional<int> AtomQuery::atomic_number() const {
  if (auto z = pinned(AtomPrimitive::Type::kSymbol))
    return z;
  return pinned(AtomPrimitive::Type::kAtomicNumber);
}

std::optional<bool> AtomQuery::aromatic() const {
  for (const auto &dis: clauses_) {
    if (dis.size() != 1)
      continue;
    for (const auto &prim: dis.front()) {
      if (prim.negated)
        continue;
      if (prim.type == AtomPrimitive::Type::kSymbol)
        return prim.aromatic;
      if (prim.type == AtomPrimitive::Type::kAromatic)
        return true;
      if (prim.type == AtomPrimitive::Type::kAliphatic)
        return false;
    }
  }
  return std::nullopt;
}

std::optional<int> AtomQuery::charge() const {
  return pinned(AtomPrimitive::Type::kCharge);
}

std::optional<int> AtomQuery::hcount() const {
  return pinned(AtomPrimitive::Type::kHCount);
}

// ---------------------------------------------------------------------------
// Graph

int PatternGraph::add_atom(PatternAtom atom) {
  atoms_.push_back(std::move(atom));
  adj_.emplace_back();
  return size() - 1;
}

int PatternGraph::add_bond(int a, int b, std::uint8_t mask) {
  bonds_.push_back({ a, b, mask });
  const int idx = num_bonds() - 1;
  adj_[a].push_back({ b, idx });
  adj_[b].push_back({ a, idx });
  return idx;
}

int PatternGraph::find_bond(int a, int b) const {
  for (const Neighbor &nb: adj_[a])
    if (nb.atom == b)
      return nb.bond;
  return -1;
}

int PatternGraph::find_map(int map) const {
  if (map <= 0)
    return -1;
  for (int i = 0; i < size(); ++i)
    if (atoms_[i].atom_map == map)
      return i;
  return -1;
}

std::vector<std::vector<int>> PatternGraph::components() const {
  std::vector<int> comp(size(), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < size(); ++s) {
    if (comp[s] >= 0)
      continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack { s };
    comp[s] = id;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      out[id].push_back(a);
      for (const Neighbor &nb: adj_[a]) {
        if (comp[nb.atom] < 0) {
          comp[nb.atom] = id;
          stack.push_back(nb.atom);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

PatternGraph PatternGraph::subgraph(std::span<const int> atoms) const {
  std::vector<int> remap(size(), -1);
  PatternGraph sub;
  for (int a: atoms)
    remap[a] = sub.add_atom(atoms_[a]);
  for (const PatternBond &b: bonds_)
    if (remap[b.begin] >= 0 && remap[b.end] >= 0)
      sub.add_bond(remap[b.begin], remap[b.end], b.mask);
  return sub;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

using Kind = SmartsError::Kind;
using Type = AtomPrimitive::Type;

AtomPrimitive symbol_prim(int z, bool aromatic) {
  AtomPrimitive p;
  p.type = Type::kSymbol;
  p.value = z;
  p.aromatic = aromatic;
  return p;
}

AtomQuery single(AtomPrimitive p) {
  return AtomQuery({ { { p } } });
}

class SmartsParser {
public:
  explicit SmartsParser(std::string_view text): text_(text) { }

  PatternGraph parse() {
    if (text_.empty())
      throw SmartsError(Kind::kMalformedPattern, 0, "", "empty pattern");

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(') {
        if (prev_ < 0)
          malformed("branch without preceding atom");
        branches_.push_back(prev_);
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty())
          malformed("unmatched ')'");
        if (pending_)
          malformed("dangling bond");
        prev_ = branches_.back();
        branches_.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (pending_)
          malformed("dangling bond");
        prev_ = -1;
        ++pos_;
      } else if (is_bond_char(c)) {
        read_bond();
      } else if (std::isdigit(c) || c == '%') {
        read_ring_closure();
      } else if (c == '[') {
        read_bracket();
      } else {
        read_bare_atom();
      }
    }
    if (!rings_.empty())
      malformed("unclosed ring");
    if (!branches_.empty())
      malformed("unclosed '('");
    if (pending_)
      malformed("dangling bond");
    if (g_.empty())
      malformed("no atoms");

    std::map<int, int> seen;
    for (int i = 0; i < g_.size(); ++i) {
      const int m = g_.atom(i).atom_map;
      if (m > 0 && !seen.emplace(m, i).second)
        throw SmartsError(Kind::kMalformedPattern, 0, std::to_string(m),
                          "duplicate atom map " + std::to_string(m));
    }
    if (stereo_)
      log::warn("stereochemistry discarded in '" + std::string(text_) + "'");
    return std::move(g_);
  }

private:
  [[noreturn]] void malformed(const std::string &what) const {
    throw SmartsError(Kind::kMalformedPattern, pos_, "", what);
  }

  [[noreturn]] void unsupported(std::size_t at, std::string token) const {
    throw SmartsError(Kind::kUnsupportedQueryFeature, at, token,
                      "unsupported SMARTS feature '" + token + "'");
  }

  static bool is_bond_char(char c) {
    return std::string_view("-=#:~/\\@!&,;").find(c) != std::string_view::npos;
  }

  void read_bond() {
    if (pending_)
      malformed("consecutive bond expressions");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_bond_char(text_[pos_]))
      ++pos_;
    pending_ = bond_expression(text_.substr(start, pos_ - start), start);
  }

  // ';' < ',' < '&' (implicit) precedence, '!' negation.
  std::uint8_t bond_expression(std::string_view s, std::size_t at) {
    std::uint8_t semi = bond_mask::kAny;
    for (std::string_view lo: split(s, ';')) {
      std::uint8_t any = 0;
      for (std::string_view mid: split(lo, ',')) {
        std::uint8_t all = bond_mask::kAny;
        std::size_t i = 0;
        while (i < mid.size()) {
          if (mid[i] == '&') {
            ++i;
            continue;
          }
          bool neg = false;
          while (i < mid.size() && mid[i] == '!') {
            neg = !neg;
            ++i;
          }
          if (i >= mid.size())
            malformed("bad bond expression");
          std::uint8_t m = 0;
          switch (mid[i]) {
          case '-':
            m = bond_mask::kSingle;
            break;
          case '=':
            m = bond_mask::kDouble;
            break;
          case '#':
            m = bond_mask::kTriple;
            break;
          case ':':
            m = bond_mask::kAromatic;
            break;
          case '~':
            m = bond_mask::kAny;
            break;
          case '/':
          case '\\':
            stereo_ = true;
            m = bond_mask::kSingle;
            break;
          case '@':
            unsupported(at + (mid.data() - s.data()) + i, "@");
          default:
            malformed("bad bond expression");
          }
          if (neg)
            m = static_cast<std::uint8_t>(~m & bond_mask::kAny);
          all &= m;
          ++i;
        }
        any |= all;
      }
      semi &= any;
    }
    return semi;
  }

  static std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == sep) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return parts;
  }

  void read_ring_closure() {
    if (prev_ < 0)
      malformed("ring closure before atom");
    int num;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(text_[pos_ + 1])
          || !std::isdigit(text_[pos_ + 2]))
        malformed("bad %nn ring closure");
      num = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      num = text_[pos_++] - '0';
    }
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      rings_.emplace(num, std::make_pair(prev_, pending_));
      pending_.reset();
      return;
    }
    auto [atom, mask] = it->second;
    rings_.erase(it);
    if (mask && pending_ && *mask != *pending_)
      malformed("conflicting ring bond");
    if (atom == prev_ || g_.find_bond(atom, prev_) >= 0)
      malformed("invalid ring closure");
    g_.add_bond(atom, prev_, pending_.value_or(mask.value_or(bond_mask::kDefault)));
    pending_.reset();
  }

  void add_atom(PatternAtom atom) {
    const int idx = g_.add_atom(std::move(atom));
    if (prev_ >= 0) {
      g_.add_bond(prev_, idx, pending_.value_or(bond_mask::kDefault));
      pending_.reset();
    } else if (pending_) {
      malformed("bond without preceding atom");
    }
    prev_ = idx;
  }

  void read_bare_atom() {
    const char c = text_[pos_];
    PatternAtom atom;
    if (c == '*') {
      atom.query = single({ Type::kAny });
      ++pos_;
    } else if (c == 'a' || c == 'A') {
      atom.query = single({ c == 'a' ? Type::kAromatic : Type::kAliphatic });
      ++pos_;
    } else if (text_.substr(pos_, 2) == "Cl" || text_.substr(pos_, 2) == "Br") {
      atom.query = single(symbol_prim(find_element(text_.substr(pos_, 2))->atomic_number, false));
      pos_ += 2;
    } else if (std::string_view("BCNOPSFI").find(c) != std::string_view::npos) {
      atom.query = single(symbol_prim(find_element(text_.substr(pos_, 1))->atomic_number, false));
      ++pos_;
    } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
      const std::string up(1, static_cast<char>(std::toupper(c)));
      atom.query = single(symbol_prim(find_element(up)->atomic_number, true));
      ++pos_;
    } else if (c == '$') {
      unsupported(pos_, "$(");
    } else {
      unsupported(pos_, std::string(1, c));
    }
    add_atom(std::move(atom));
  }

  void read_bracket() {
    const std::size_t open = pos_;
    // Find the matching ']' (recursive SMARTS may nest brackets).
    std::size_t close = std::string_view::npos;
    int depth = 0;
    for (std::size_t i = pos_; i < text_.size(); ++i) {
      if (text_[i] == '[')
        ++depth;
      else if (text_[i] == ']' && --depth == 0) {
        close = i;
        break;
      }
    }
    if (close == std::string_view::npos)
      malformed("unterminated bracket atom");

    std::string_view body = text_.substr(open + 1, close - open - 1);
    PatternAtom atom;
    const std::size_t colon = body.rfind(':');
    if (colon != std::string_view::npos) {
      std::string_view digits = body.substr(colon + 1);
      if (digits.empty()
          || !std::all_of(digits.begin(), digits.end(),
                          [](char ch) { return std::isdigit(ch); }))
        malformed("bad atom map");
      atom.atom_map = std::stoi(std::string(digits));
      body = body.substr(0, colon);
    }
    if (body.empty())
      malformed("empty bracket atom");
    atom.query = bracket_query(body, open + 1);
    pos_ = close + 1;
    add_atom(std::move(atom));
  }

  AtomQuery bracket_query(std::string_view body, std::size_t at) {
    // Lone hydrogen atom: [H], [H+], [2H].
    std::vector<AtomQuery::Disjunction> clauses;
    std::size_t offset = 0;
    for (std::string_view lo: split(body, ';')) {
      AtomQuery::Disjunction dis;
      std::size_t mid_off = offset;
      for (std::string_view mid: split(lo, ',')) {
        dis.push_back(conjunction(mid, at + mid_off, offset == 0 && mid_off == 0));
        mid_off += mid.size() + 1;
      }
      clauses.push_back(std::move(dis));
      offset += lo.size() + 1;
    }
    return AtomQuery(std::move(clauses));
  }

  AtomQuery::Conjunction conjunction(std::string_view s, std::size_t at,
                                     bool first_in_bracket) {
    AtomQuery::Conjunction conj;
    std::size_t i = 0;
    auto read_int = [&](int fallback) {
      if (i >= s.size() || !std::isdigit(s[i]))
        return fallback;
      int v = 0;
      while (i < s.size() && std::isdigit(s[i]))
        v = v * 10 + (s[i++] - '0');
      return v;
    };

    if (s.empty())
      malformed("empty query");

    while (i < s.size()) {
      if (s[i] == '&') {
        ++i;
        continue;
      }
      bool neg = false;
      while (i < s.size() && s[i] == '!') {
        neg = !neg;
        ++i;
      }
      if (i >= s.size())
        malformed("dangling '!'");

      const std::size_t tok = i;
      const char c = s[i];
      AtomPrimitive p;
      p.negated = neg;

      if (c == '*') {
        p.type = Type::kAny;
        ++i;
      } else if (c == '#') {
        ++i;
        if (i >= s.size() || !std::isdigit(s[i]))
          malformed("'#' needs an atomic number");
        p.type = Type::kAtomicNumber;
        p.value = read_int(0);
      } else if (std::isdigit(c)) {
        p.type = Type::kIsotope;
        p.value = read_int(0);
      } else if (c == '+' || c == '-') {
        const int unit = c == '+' ? 1 : -1;
        ++i;
        p.type = Type::kCharge;
        if (i < s.size() && std::isdigit(s[i])) {
          p.value = unit * read_int(1);
        } else {
          p.value = unit;
          while (i < s.size() && s[i] == c) {
            p.value += unit;
            ++i;
          }
        }
      } else if (c == '$') {
        unsupported(at + tok, "$(");
      } else if (c == '@') {
        stereo_ = true;
        while (i < s.size() && s[i] == '@')
          ++i;
        if (i + 1 < s.size() && std::isupper(s[i]) && std::isupper(s[i + 1])) {
          i += 2;
          read_int(0);
        }
        continue;
      } else if (std::islower(c)) {
        static constexpr std::string_view kTwo[] = { "se", "as", "te" };
        bool done = false;
        for (std::string_view two: kTwo) {
          if (s.substr(i, 2) == two) {
            std::string up(two);
            up[0] = static_cast<char>(std::toupper(up[0]));
            p = symbol_prim(find_element(up)->atomic_number, true);
            p.negated = neg;
            i += 2;
            done = true;
            break;
          }
        }
        if (!done) {
          if (c == 'a') {
            p.type = Type::kAromatic;
          } else if (std::string_view("bcnops").find(c) != std::string_view::npos) {
            const std::string up(1, static_cast<char>(std::toupper(c)));
            p = symbol_prim(find_element(up)->atomic_number, true);
            p.negated = neg;
          } else {
            unsupported(at + tok, std::string(1, c));
          }
          ++i;
        }
      } else if (std::isupper(c)) {
        const Element *two = nullptr;
        if (i + 1 < s.size() && std::islower(s[i + 1]))
          two = find_element(s.substr(i, 2));
        if (two != nullptr) {
          p = symbol_prim(two->atomic_number, false);
          p.negated = neg;
          i += 2;
        } else if (c == 'H') {
          ++i;
          const bool lone = first_in_bracket && tok == 0
                            && (i >= s.size() || s[i] == '+' || s[i] == '-');
          if (lone) {
            p = symbol_prim(1, false);
            p.negated = neg;
          } else {
            p.type = Type::kHCount;
            p.value = read_int(1);
          }
        } else if (c == 'D' || c == 'X') {
          ++i;
          p.type = c == 'D' ? Type::kDegree : Type::kConnectivity;
          p.value = read_int(1);
        } else if (c == 'A') {
          p.type = Type::kAliphatic;
          ++i;
        } else if (c == 'R') {
          unsupported(at + tok, "R");
        } else {
          const Element *e = find_element(s.substr(i, 1));
          if (e == nullptr)
            unsupported(at + tok, std::string(1, c));
          p = symbol_prim(e->atomic_number, false);
          p.negated = neg;
          ++i;
        }
      } else {
        unsupported(at + tok, std::string(1, c));
      }
      conj.push_back(p);
    }
    if (conj.empty())
      conj.push_back({ Type::kAny });
    return conj;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  PatternGraph g_;
  int prev_ = -1;
  std::optional<std::uint8_t> pending_;
  std::vector<int> branches_;
  std::map<int, std::pair<int, std::optional<std::uint8_t>>> rings_;
  bool stereo_ = false;
};

// Kekule 6-rings spelled with explicit alternating '-'/'=' bonds over plain
// C/N symbols are rewritten to their aromatic spelling, mirroring molecule
// perception.
void normalize_pattern_aromaticity(PatternGraph &g) {
  Molecule topo;
  for (int i = 0; i < g.size(); ++i)
    topo.add_atom({});
  for (const PatternBond &b: g.bonds())
    topo.add_bond(b.begin, b.end, BondOrder::kSingle);

  for (const auto &cycle: small_cycles(topo, 6)) {
    if (cycle.size() != 6)
      continue;
    bool ok = true;
    int doubles = 0;
    std::vector<int> bonds;
    for (std::size_t i = 0; i < 6 && ok; ++i) {
      const int b = g.find_bond(cycle[i], cycle[(i + 1) % 6]);
      const std::uint8_t m = g.bond(b).mask;
      const bool expect_double = (m == bond_mask::kDouble);
      ok = m == bond_mask::kDouble || m == bond_mask::kSingle
           || m == bond_mask::kDefault;
      if (i > 0 && ok) {
        const std::uint8_t pm = g.bond(bonds.back()).mask;
        ok = (pm == bond_mask::kDouble) != expect_double;
      }
      doubles += expect_double ? 1 : 0;
      bonds.push_back(b);
    }
    if (!ok || doubles != 3)
      continue;
    for (int a: cycle) {
      const auto &q = g.atom(a).query;
      const auto z = q.atomic_number();
      const auto arom = q.aromatic();
      if (!z || (*z != 6 && *z != 7) || !arom || *arom) {
        ok = false;
        break;
      }
    }
    if (!ok)
      continue;
    for (int a: cycle) {
      auto clauses = g.atom(a).query.clauses();
      for (auto &dis: clauses)
        for (auto &conj: dis)
          for (auto &prim: conj)
            if (prim.type == Type::kSymbol && !prim.negated)
              prim.aromatic = true;
      g.mutable_atom(a).query = AtomQuery(std::move(clauses));
    }
    for (int b: bonds)
      g.set_bond_mask(b, bond_mask::kAromatic);
  }
}

}  // namespace

PatternGraph parse_smarts(std::string_view text) {
  PatternGraph g = SmartsParser(text).parse();
  normalize_pattern_aromaticity(g);
  return g;
}

std::string bond_mask_text(std::uint8_t mask) {
  switch (mask) {
  case bond_mask::kSingle:
    return "-";
  case bond_mask::kDouble:
    return "=";
  case bond_mask::kTriple:
    return "#";
  case bond_mask::kAromatic:
    return ":";
  case bond_mask::kDefault:
    return "";
  case bond_mask::kAny:
    return "~";
  default:
    break;
  }
  std::string out;
  for (auto [bit, sym]: { std::pair { bond_mask::kSingle, '-' },
                          std::pair { bond_mask::kDouble, '=' },
                          std::pair { bond_mask::kTriple, '#' },
                          std::pair { bond_mask::kAromatic, ':' } }) {
    if (mask & bit) {
      if (!out.empty())
        out += ',';
      out += sym;
    }
  }
  // An empty mask can never match; spell it as an impossible conjunction.
  return out.empty() ? "-&=" : out;
}

std::string write_smarts(const PatternGraph &pattern,
                         const std::vector<int> &ranks, bool atom_maps) {
  internal::DfsWriter<PatternGraph> writer(
      pattern, ranks,
      [&](int a) {
        const PatternAtom &pa = pattern.atom(a);
        std::string s = "[" + pa.query.text();
        if (atom_maps && pa.atom_map > 0)
          s += ":" + std::to_string(pa.atom_map);
        return s + "]";
      },
      [&](int b) { return bond_mask_text(pattern.bond(b).mask); });
  return writer.write();
}

std::string canonical_smarts(const PatternGraph &pattern, bool use_maps) {
  std::vector<std::tuple<std::string, int, int>> inv(pattern.size());
  for (int i = 0; i < pattern.size(); ++i)
    inv[i] = { pattern.atom(i).query.text(),
               use_maps ? pattern.atom(i).atom_map : 0, pattern.degree(i) };
  const auto ranks = internal::canonical_order(
      pattern, inv, [&](int b) { return static_cast<int>(pattern.bond(b).mask); });
  return write_smarts(pattern, ranks, use_maps);
}

}  // namespace retro
