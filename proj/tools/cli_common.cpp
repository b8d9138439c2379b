//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli_common.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "retro/dataset.h"
#include "retro/log.h"
#include "retro/smiles.h"
#include "retro/template.h"

namespace retro::cli {

RunManifest::RunManifest(std::string command, const CLI::App *sub, int argc, char **argv)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {
  if (sub != nullptr)
    config_ = sub->config_to_str(true, false);
  for (int i = 1; i < argc; ++i)
    argv_.emplace_back(argv[i]);
}

void RunManifest::input(const std::string &path) {
  std::string digest;
  try {
    digest = sha256_hex(read_input(path));
  } catch (const UnreadableInput &) {
    digest = "";
  }
  inputs_.emplace_back(path, digest);
}

void RunManifest::output(const std::string &path) { outputs_.push_back(path); }

void RunManifest::set(const std::string &key, nlohmann::ordered_json value) {
  extra_[key] = std::move(value);
}

nlohmann::ordered_json RunManifest::core() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["argv"] = argv_;
  j["config"] = config_;
  nlohmann::ordered_json in = nlohmann::ordered_json::object();
  for (const auto &[p, h]: inputs_)
    in[p] = h;
  j["input_hashes"] = in;
  j["tool_version"] = kToolVersion;
  j["outputs"] = outputs_;
  if (!extra_.empty())
    j["details"] = extra_;
  return j;
}

std::string RunManifest::hash() const { return sha256_hex(core().dump()); }

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j = core();
  j["wall_time_s"]
      = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  j["manifest_hash"] = hash();
  return j;
}

void RunManifest::write(const std::string &path) const {
  std::string target = path;
  if (target.empty()) {
    if (outputs_.empty())
      return;
    target = outputs_.front() + ".manifest.json";
  }
  write_atomic(target, to_json().dump(2) + "\n");
}

std::string read_input(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || std::filesystem::is_directory(path))
    throw UnreadableInput("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::string &path, const std::string &data) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write '" + tmp + "'");
    out << data;
    out.flush();
    if (!out)
      throw std::runtime_error("write to '" + tmp + "' failed");
  }
  fs::rename(tmp, path);
}

void add_policy_options(CLI::App *sub, PolicyOptions &opts) {
  sub->add_option("--policy-url", opts.url, "Policy server base URL (http://host:port)");
  sub->add_option("--table", opts.table,
                  "Reaction JSONL used to build the in-process table policy");
  sub->add_option("--policy-timeout", opts.timeout_s, "Policy request timeout in seconds")
      ->check(CLI::PositiveNumber);
}

namespace {

std::unique_ptr<PolicyBackend> table_policy(const std::string &path, RunManifest &manifest) {
  manifest.input(path);
  const std::vector<ReactionRecord> records = parse_reactions(read_input(path));
  std::vector<TableEntry> entries;
  for (const ReactionRecord &r: records) {
    std::string smarts;
    if (r.template_smarts) {
      smarts = *r.template_smarts;
    } else {
      try {
        smarts = canonical_template_smarts(extract_template(r.reaction));
      } catch (const std::exception &e) {
        log::warn("table record '" + r.id + "' skipped: " + e.what());
        continue;
      }
    }
    entries.push_back({ mapped_smiles(r.reaction.product), smarts });
  }
  try {
    return std::make_unique<TablePolicy>(entries);
  } catch (const PolicyError &e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::unique_ptr<PolicyBackend> make_policy(const PolicyOptions &opts,
                                           RunManifest &manifest) {
  if (opts.url.empty() && opts.table.empty())
    throw ConfigError("either --policy-url or --table is required");
  if (!opts.url.empty()) {
    std::unique_ptr<HttpPolicy> http;
    try {
      http = std::make_unique<HttpPolicy>(opts.url, opts.timeout_s);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(e.what());
    }
    if (http->healthy()) {
      manifest.set("policy", "http");
      return http;
    }
    if (opts.table.empty())
      throw BackendUnavailable("policy server at " + opts.url + " is unreachable");
    log::warn("policy server at " + opts.url + " is unreachable; using the table policy");
  }
  manifest.set("policy", "table");
  return table_policy(opts.table, manifest);
}

std::vector<Target> load_targets(const std::string &path) {
  const std::string text = read_input(path);
  std::vector<Target> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    Target t;
    if (!(fields >> t.smiles) || t.smiles.front() == '#')
      continue;
    if (!(fields >> t.id))
      t.id = std::to_string(line_no);
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace retro::cli
