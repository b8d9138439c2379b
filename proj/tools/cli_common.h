//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_TOOLS_CLI_COMMON_H_
#define RETRO_TOOLS_CLI_COMMON_H_

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "retro/policy.h"

namespace retro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnreadable = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitPolicyUnreachable = 3;
inline constexpr int kExitSchema = 4;

inline constexpr const char *kToolVersion = "0.3.0";

class UnreadableInput: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SchemaMismatch: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  int jobs = 1;
  std::string log_level = "info";
};

// Records inputs and outputs of one subcommand and writes the manifest next
// to the primary output.
class RunManifest {
public:
  RunManifest(std::string command, const CLI::App *sub, int argc, char **argv);

  void input(const std::string &path);
  void output(const std::string &path);
  void set(const std::string &key, nlohmann::ordered_json value);

  nlohmann::ordered_json to_json() const;
  // Hash over everything but the wall time.
  std::string hash() const;
  // Written to `path`, or to "<first output>.manifest.json" when empty.
  void write(const std::string &path = "") const;

private:
  nlohmann::ordered_json core() const;

  std::string command_;
  std::string config_;
  std::vector<std::string> argv_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::string> outputs_;
  nlohmann::ordered_json extra_ = nlohmann::ordered_json::object();
  std::chrono::steady_clock::time_point start_;
};

// Throws UnreadableInput.
std::string read_input(const std::string &path);
// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::string &path, const std::string &data);

// Policy selection: --policy-url first; a --table fallback is used when the
// server is unreachable. Throws BackendUnavailable when no fallback exists and
// ConfigError when neither is given.
struct PolicyOptions {
  std::string url;
  std::string table;
  double timeout_s = 30.0;
};

std::unique_ptr<PolicyBackend> make_policy(const PolicyOptions &opts,
                                           RunManifest &manifest);
void add_policy_options(CLI::App *sub, PolicyOptions &opts);

struct Target {
  std::string id;
  std::string smiles;
};

// "SMILES [id]" per line; ids default to the line number.
std::vector<Target> load_targets(const std::string &path);

// Runs fn(i) for i in [0, n) on up to `jobs` threads; results keep index
// order.
template <class R, class Fn>
std::vector<R> parallel_map(int n, int jobs, Fn fn);

}  // namespace retro::cli

#include "cli_parallel.h"

#endif  // RETRO_TOOLS_CLI_COMMON_H_
