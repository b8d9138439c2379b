//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_POLICY_H_
#define RETRO_POLICY_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "retro/molecule.h"
#include "retro/template.h"

namespace retro {

class BackendUnavailable: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class PolicyError: public std::runtime_error {
public:
  enum class Kind { kEmptyDataset, kBadConfig };

  PolicyError(Kind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) { }
  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

// Unvalidated backend output.
struct RawProposal {
  std::string smarts;
  double log_prob = 0;
};

struct RouteSample {
  std::vector<std::string> templates;
  double log_prob = 0;
};

struct PolicyProposal {
  RetroTemplate tmpl;
  std::string smarts;
  std::string hash;
  double log_prob = 0;
  std::optional<std::string> condition;
};

inline constexpr int kSingleStepBeam = 100;
inline constexpr int kMultiStepBeam = 15;

struct PolicyConfig {
  int k = 10;
  double temperature = 3.0;
  bool strict = false;
  // Library consulted in strict mode; strict with no library keeps nothing.
  const TemplateLibrary *library = nullptr;
  // Raw candidates requested from the backend before validation.
  int candidate_pool = 50;
  int beam_size = kSingleStepBeam;
  std::optional<std::string> condition;
};

class PolicyBackend {
public:
  virtual ~PolicyBackend() = default;

  virtual std::string name() const = 0;
  // Up to `k` raw proposals, best first. Must tolerate concurrent calls.
  virtual std::vector<RawProposal> raw_proposals(
      const Molecule &target, int k,
      const std::optional<std::string> &condition) const = 0;
  // Whole-route template sequences. The default reports no support.
  virtual std::vector<RouteSample> propose_routes(
      const Molecule &target, int n_samples,
      const std::optional<std::string> &condition) const;
};

struct ProposeStats {
  int raw = 0;
  int unparseable = 0;
  int duplicates = 0;
  int novel_removed = 0;
};

// Validated, deduplicated (by template hash, best log-prob kept), strictly
// filtered and then truncated to cfg.k; sorted by descending log-prob.
std::vector<PolicyProposal> propose(const PolicyBackend &backend,
                                    const Molecule &target,
                                    const PolicyConfig &cfg,
                                    ProposeStats *stats = nullptr);

// Softmax of log_prob / temperature.
std::vector<double> normalize_priors(const std::vector<double> &log_probs,
                                     double temperature);
std::vector<double> normalize_priors(const std::vector<PolicyProposal> &proposals,
                                     double temperature);

// One training observation for the table policy.
struct TableEntry {
  std::string product;  // any SMILES spelling
  std::string smarts;
};

// Offline policy built from extracted templates: templates recorded for the
// exact query product come first (by count), then all other templates by
// library frequency. Scores are add-one smoothed and normalized to log-probs.
class TablePolicy: public PolicyBackend {
public:
  struct Options {
    // Global fallback only lists templates whose product pattern matches.
    bool require_match = false;
    // Route sampler limits.
    int max_route_steps = 10;
    int max_route_candidates = 400;
  };

  explicit TablePolicy(const std::vector<TableEntry> &entries);
  TablePolicy(const std::vector<TableEntry> &entries, Options opts);

  std::string name() const override { return "table"; }
  std::vector<RawProposal> raw_proposals(
      const Molecule &target, int k,
      const std::optional<std::string> &condition) const override;
  // Chains exact-product proposals (largest open molecule first) into
  // template sequences. "<STEPS=n>" keeps sequences of n templates and
  // "<LEAF_ATOMS=n>" those whose largest leaf has at most n heavy atoms.
  // Distinct sequences are returned best first and repeated cyclically to
  // fill `n_samples`.
  std::vector<RouteSample> propose_routes(
      const Molecule &target, int n_samples,
      const std::optional<std::string> &condition) const override;

  std::size_t num_templates() const noexcept { return templates_.size(); }
  const TemplateLibrary &library() const noexcept { return library_; }

private:
  struct Entry {
    std::string hash;
    std::string smarts;
    RetroTemplate tmpl;
    int count = 0;
  };

  std::vector<std::pair<int, double>> scored(const std::string &product_smiles,
                                             const Molecule *target) const;

  Options opts_;
  std::vector<Entry> templates_;
  std::map<std::string, int> index_of_;
  std::map<std::string, std::map<int, int>> by_product_;
  long long total_count_ = 0;
  TemplateLibrary library_;
};

// Client for an external policy server speaking the JSON protocol:
// POST /v1/propose and POST /v1/propose_route.
class HttpPolicy: public PolicyBackend {
public:
  // `url` like "http://127.0.0.1:8000" with an optional path prefix.
  explicit HttpPolicy(std::string url, double timeout_s = 30.0);

  std::string name() const override { return "http"; }
  std::vector<RawProposal> raw_proposals(
      const Molecule &target, int k,
      const std::optional<std::string> &condition) const override;
  std::vector<RouteSample> propose_routes(
      const Molecule &target, int n_samples,
      const std::optional<std::string> &condition) const override;

  // GET /v1/health succeeds.
  bool healthy() const;

private:
  std::string post(const std::string &path, const std::string &body) const;

  std::string scheme_host_port_;
  std::string prefix_;
  double timeout_s_;
};

}  // namespace retro

#endif  // RETRO_POLICY_H_
