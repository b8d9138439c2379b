//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/tokenizer.h"

#include <algorithm>
#include <limits>
#include <regex>

#include <json.hpp>

namespace retro {

std::string steps_condition(int steps) {
  return "<STEPS=" + std::to_string(steps) + ">";
}

std::string leaf_atoms_condition(int atoms) {
  return "<LEAF_ATOMS=" + std::to_string(atoms) + ">";
}

std::vector<std::string> special_tokens() {
  std::vector<std::string> out { std::string(kPadToken), std::string(kBosToken),
                                 std::string(kEosToken), std::string(kUnkToken) };
  for (int s = 2; s <= 9; ++s)
    out.push_back(steps_condition(s));
  for (int a = 10; a <= 40; a += 5)
    out.push_back(leaf_atoms_condition(a));
  return out;
}

std::vector<std::string> tokenize_smiles(std::string_view smiles) {
  static const std::regex kPattern(
      R"((\[[^\]]+\]|Br?|Cl?|N|O|S|P|F|I|b|c|n|o|s|p|\(|\)|\.|=|#|-|\+|\\|\/|:|~|@|\?|>|\*|\$|%[0-9]{2}|[0-9]))");
  std::vector<std::string> out;
  std::size_t pos = 0;
  const std::string text(smiles);
  auto begin = std::sregex_iterator(text.begin(), text.end(), kPattern);
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const std::size_t at = static_cast<std::size_t>(it->position());
    for (; pos < at; ++pos)
      out.emplace_back(1, text[pos]);
    out.push_back(it->str());
    pos = at + it->length();
  }
  for (; pos < text.size(); ++pos)
    out.emplace_back(1, text[pos]);
  return out;
}

// ---------------------------------------------------------------------------
// Vocabulary

int Vocabulary::add(const std::string &token) {
  auto [it, fresh] = ids_.emplace(token, size());
  if (fresh)
    tokens_.push_back(token);
  return it->second;
}

int Vocabulary::id(const std::string &token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string &Vocabulary::token(int id) const {
  if (id < 0 || id >= size())
    throw TokenizerError(TokenizerError::Kind::kUnknownId,
                         "token id " + std::to_string(id) + " out of range");
  return tokens_[id];
}

// ---------------------------------------------------------------------------
// BPE

BpeModel::BpeModel(std::vector<std::string> alphabet,
                   std::vector<std::pair<std::string, std::string>> merges)
    : alphabet_(std::move(alphabet)), merges_(std::move(merges)) {
  build_vocab();
}

void BpeModel::build_vocab() {
  vocab_ = Vocabulary();
  rank_.clear();
  for (const std::string &s: special_tokens())
    vocab_.add(s);
  for (const std::string &c: alphabet_)
    vocab_.add(c);
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    rank_.emplace(merges_[i], static_cast<int>(i));
    vocab_.add(merges_[i].first + merges_[i].second);
  }
}

namespace {

using Pair = std::pair<std::string, std::string>;

void merge_all(std::vector<std::string> &symbols, const Pair &pair) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == pair.first
        && symbols[i + 1] == pair.second) {
      out.push_back(pair.first + pair.second);
      ++i;
    } else {
      out.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(out);
}

}  // namespace

std::vector<std::string> BpeModel::encode_tokens(std::string_view s) const {
  std::vector<std::string> symbols;
  symbols.reserve(s.size());
  for (char c: s) {
    std::string sym(1, c);
    // Every single-character vocabulary entry belongs to the alphabet.
    symbols.push_back(vocab_.contains(sym) ? std::move(sym)
                                           : std::string(kUnkToken));
  }
  while (symbols.size() > 1) {
    int best = std::numeric_limits<int>::max();
    const Pair *best_pair = nullptr;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = rank_.find({ symbols[i], symbols[i + 1] });
      if (it != rank_.end() && it->second < best) {
        best = it->second;
        best_pair = &it->first;
      }
    }
    if (best_pair == nullptr)
      break;
    merge_all(symbols, *best_pair);
  }
  return symbols;
}

std::vector<int> BpeModel::encode(std::string_view s) const {
  std::vector<int> ids;
  for (const std::string &tok: encode_tokens(s))
    ids.push_back(vocab_.id(tok));
  return ids;
}

std::string BpeModel::decode(const std::vector<int> &ids) const {
  std::string out;
  for (int id: ids) {
    if (id == kPadId || id == kBosId || id == kEosId)
      continue;
    out += vocab_.token(id);
  }
  return out;
}

std::string BpeModel::to_json(const std::vector<std::string> &whole_templates) const {
  nlohmann::ordered_json j;
  j["alphabet"] = alphabet_;
  j["merges"] = nlohmann::json::array();
  for (const auto &[a, b]: merges_)
    j["merges"].push_back({ a, b });
  nlohmann::ordered_json specials = nlohmann::ordered_json::object();
  const auto sp = special_tokens();
  for (std::size_t i = 0; i < sp.size(); ++i)
    specials[sp[i]] = i;
  j["specials"] = specials;
  j["whole_template_tokens"] = whole_templates;
  return j.dump(2) + "\n";
}

BpeModel BpeModel::from_json(std::string_view text,
                             std::vector<std::string> *whole_templates) {
  using Kind = TokenizerError::Kind;
  try {
    const auto j = nlohmann::json::parse(text);
    auto alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::vector<Pair> merges;
    for (const auto &m: j.at("merges")) {
      if (!m.is_array() || m.size() != 2)
        throw TokenizerError(Kind::kBadVocabFile, "merge entries must be pairs");
      merges.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
    }
    const auto sp = special_tokens();
    if (j.contains("specials")) {
      for (std::size_t i = 0; i < sp.size(); ++i) {
        const auto &s = j.at("specials");
        if (!s.contains(sp[i]) || s.at(sp[i]).get<std::size_t>() != i)
          throw TokenizerError(Kind::kBadVocabFile,
                               "special token table does not match " + sp[i]);
      }
    }
    if (whole_templates != nullptr && j.contains("whole_template_tokens"))
      *whole_templates = j.at("whole_template_tokens").get<std::vector<std::string>>();
    return BpeModel(std::move(alphabet), std::move(merges));
  } catch (const nlohmann::json::exception &e) {
    throw TokenizerError(Kind::kBadVocabFile, e.what());
  }
}

BpeModel bpe_train(const std::vector<std::string> &corpus, int target_vocab) {
  using Kind = TokenizerError::Kind;
  if (corpus.empty())
    throw TokenizerError(Kind::kEmptyCorpus, "BPE corpus is empty");

  std::map<std::string, long long> freq;
  for (const std::string &s: corpus)
    ++freq[s];

  std::vector<std::string> alphabet;
  {
    std::vector<bool> seen(256, false);
    for (const auto &[s, n]: freq)
      for (unsigned char c: s)
        seen[c] = true;
    for (int c = 0; c < 256; ++c)
      if (seen[c])
        alphabet.emplace_back(1, static_cast<char>(c));
  }
  if (target_vocab < static_cast<int>(alphabet.size()))
    throw TokenizerError(Kind::kTargetTooSmall,
                         "target vocabulary " + std::to_string(target_vocab)
                             + " is below the alphabet size "
                             + std::to_string(alphabet.size()));

  std::vector<std::pair<std::vector<std::string>, long long>> words;
  for (const auto &[s, n]: freq) {
    std::vector<std::string> syms;
    for (char c: s)
      syms.emplace_back(1, c);
    words.emplace_back(std::move(syms), n);
  }

  std::vector<Pair> merges;
  while (static_cast<int>(alphabet.size() + merges.size()) < target_vocab) {
    std::map<Pair, long long> counts;
    for (const auto &[syms, n]: words)
      for (std::size_t i = 0; i + 1 < syms.size(); ++i)
        counts[{ syms[i], syms[i + 1] }] += n;
    const Pair *best = nullptr;
    long long best_count = 0;
    for (const auto &[pair, c]: counts) {
      if (c > best_count) {
        best_count = c;
        best = &pair;
      }
    }
    if (best == nullptr || best_count < 2)
      break;
    const Pair chosen = *best;
    merges.push_back(chosen);
    for (auto &[syms, n]: words)
      merge_all(syms, chosen);
  }
  return BpeModel(std::move(alphabet), std::move(merges));
}

// ---------------------------------------------------------------------------
// Frequency-sensitive template tokens

FrequencyTemplateTokenizer::FrequencyTemplateTokenizer(const TemplateLibrary &lib,
                                                       BpeModel bpe, int threshold)
    : bpe_(std::move(bpe)), threshold_(threshold) {
  for (const auto &[hash, entry]: lib.entries()) {
    counts_.emplace(hash, entry.count);
    if (entry.count > threshold_) {
      hash_id_.emplace(hash, bpe_.vocab().size() + static_cast<int>(hashes_.size()));
      hashes_.push_back(hash);
      smarts_.push_back(entry.smarts);
    }
  }
}

bool FrequencyTemplateTokenizer::is_whole(std::string_view smarts) const {
  try {
    return hash_id_.contains(template_hash(smarts));
  } catch (const std::exception &) {
    return false;
  }
}

std::vector<std::string> FrequencyTemplateTokenizer::tokenize(
    std::string_view smarts) const {
  if (is_whole(smarts))
    return { std::string(smarts) };
  return bpe_.encode_tokens(smarts);
}

std::vector<int> FrequencyTemplateTokenizer::encode(std::string_view smarts) const {
  if (is_whole(smarts))
    return { hash_id_.at(template_hash(smarts)) };
  return bpe_.encode(smarts);
}

std::string FrequencyTemplateTokenizer::decode(const std::vector<int> &ids) const {
  std::string out;
  const int base = bpe_.vocab().size();
  for (int id: ids) {
    if (id >= base && id < base + static_cast<int>(smarts_.size()))
      out += smarts_[id - base];
    else
      out += bpe_.decode({ id });
  }
  return out;
}

int FrequencyTemplateTokenizer::vocab_size() const noexcept {
  return bpe_.vocab().size() + static_cast<int>(hashes_.size());
}

}  // namespace retro
