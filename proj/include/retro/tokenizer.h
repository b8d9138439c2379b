//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_TOKENIZER_H_
#define RETRO_TOKENIZER_H_

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "retro/template.h"

namespace retro {

class TokenizerError: public std::runtime_error {
public:
  enum class Kind { kTargetTooSmall, kEmptyCorpus, kUnknownId, kBadVocabFile };

  TokenizerError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) { }

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

// Reference vocabulary sizes of the published models; informational only.
namespace reference_vocab {
inline constexpr int kBpeTemplate = 348;
inline constexpr int kSmiles = 121;
inline constexpr int kFrequencyTemplate = 2651;
}  // namespace reference_vocab

inline constexpr std::string_view kPadToken = "<PAD>";
inline constexpr std::string_view kBosToken = "<BOS>";
inline constexpr std::string_view kEosToken = "<EOS>";
inline constexpr std::string_view kUnkToken = "<UNK>";
inline constexpr int kPadId = 0;
inline constexpr int kBosId = 1;
inline constexpr int kEosId = 2;
inline constexpr int kUnkId = 3;

std::string steps_condition(int steps);
std::string leaf_atoms_condition(int atoms);

// PAD, BOS, EOS, UNK, then the step (2..9) and leaf-size (10..40 by 5)
// condition tokens.
std::vector<std::string> special_tokens();

// Regex SMILES tokenizer. Bracket atoms are single tokens; characters the
// pattern does not cover become one-character tokens.
std::vector<std::string> tokenize_smiles(std::string_view smiles);

// Token <-> id table with contiguous ids.
class Vocabulary {
public:
  int add(const std::string &token);
  int id(const std::string &token) const;  // kUnkId when absent
  bool contains(const std::string &token) const { return ids_.contains(token); }
  const std::string &token(int id) const;  // throws kUnknownId
  int size() const noexcept { return static_cast<int>(tokens_.size()); }

private:
  std::map<std::string, int> ids_;
  std::vector<std::string> tokens_;
};

// Character-level BPE.
class BpeModel {
public:
  BpeModel() = default;
  BpeModel(std::vector<std::string> alphabet,
           std::vector<std::pair<std::string, std::string>> merges);

  const std::vector<std::string> &alphabet() const noexcept { return alphabet_; }
  const std::vector<std::pair<std::string, std::string>> &merges() const noexcept {
    return merges_;
  }
  const Vocabulary &vocab() const noexcept { return vocab_; }
  // Alphabet plus merged tokens (specials excluded).
  int model_size() const noexcept {
    return static_cast<int>(alphabet_.size() + merges_.size());
  }

  std::vector<std::string> encode_tokens(std::string_view s) const;
  std::vector<int> encode(std::string_view s) const;
  std::string decode(const std::vector<int> &ids) const;

  std::string to_json(const std::vector<std::string> &whole_templates = {}) const;
  static BpeModel from_json(std::string_view text,
                            std::vector<std::string> *whole_templates = nullptr);

private:
  void build_vocab();

  std::vector<std::string> alphabet_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::map<std::pair<std::string, std::string>, int> rank_;
  Vocabulary vocab_;
};

// Merges the most frequent adjacent pair (ties: smallest pair
// lexicographically) until alphabet + merges reaches `target_vocab` or the
// best pair occurs fewer than twice.
BpeModel bpe_train(const std::vector<std::string> &corpus, int target_vocab);

inline constexpr int kWholeTemplateThreshold = 40;

// Templates seen more than `threshold` times become single tokens; all others
// fall back to BPE pieces.
class FrequencyTemplateTokenizer {
public:
  FrequencyTemplateTokenizer(const TemplateLibrary &lib, BpeModel bpe,
                             int threshold = kWholeTemplateThreshold);

  // Whole-template token is the input string itself.
  std::vector<std::string> tokenize(std::string_view smarts) const;
  std::vector<int> encode(std::string_view smarts) const;
  // Whole-template ids decode to the library's canonical spelling.
  std::string decode(const std::vector<int> &ids) const;

  bool is_whole(std::string_view smarts) const;
  int vocab_size() const noexcept;
  const std::vector<std::string> &whole_hashes() const noexcept { return hashes_; }
  const BpeModel &bpe() const noexcept { return bpe_; }

private:
  BpeModel bpe_;
  int threshold_;
  std::vector<std::string> hashes_;
  std::vector<std::string> smarts_;
  std::map<std::string, int> hash_id_;
  std::map<std::string, int> counts_;
};

}  // namespace retro

#endif  // RETRO_TOKENIZER_H_
