//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <httplib.h>
#include <json.hpp>

#include "retro/policy.h"
#include "retro/smiles.h"

namespace retro {

HttpPolicy::HttpPolicy(std::string url, double timeout_s): timeout_s_(timeout_s) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0)
    throw PolicyError(PolicyError::Kind::kBadConfig,
                      "policy URL must start with http://: " + url);
  const std::size_t slash = url.find('/', kScheme.size());
  if (slash == std::string::npos) {
    scheme_host_port_ = url;
  } else {
    scheme_host_port_ = url.substr(0, slash);
    prefix_ = url.substr(slash);
    while (!prefix_.empty() && prefix_.back() == '/')
      prefix_.pop_back();
  }
  if (scheme_host_port_.size() == kScheme.size())
    throw PolicyError(PolicyError::Kind::kBadConfig, "policy URL has no host");
}

std::string HttpPolicy::post(const std::string &path, const std::string &body) const {
  httplib::Client cli(scheme_host_port_);
  const auto sec = static_cast<time_t>(timeout_s_);
  const auto usec = static_cast<time_t>((timeout_s_ - sec) * 1e6);
  cli.set_connection_timeout(sec, usec);
  cli.set_read_timeout(sec, usec);
  cli.set_write_timeout(sec, usec);
  auto res = cli.Post(prefix_ + path, body, "application/json");
  if (!res)
    throw BackendUnavailable("policy server " + scheme_host_port_ + " unreachable: "
                             + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300)
    throw BackendUnavailable("policy server returned HTTP "
                             + std::to_string(res->status) + " for " + path);
  return res->body;
}

bool HttpPolicy::healthy() const {
  httplib::Client cli(scheme_host_port_);
  cli.set_connection_timeout(static_cast<time_t>(timeout_s_), 0);
  auto res = cli.Get(prefix_ + "/v1/health");
  return res && res->status >= 200 && res->status < 300;
}

std::vector<RawProposal> HttpPolicy::raw_proposals(
    const Molecule &target, int k, const std::optional<std::string> &condition) const {
  nlohmann::json req { { "smiles", canonical_smiles(target) }, { "k", k } };
  if (condition)
    req["condition"] = *condition;
  const std::string body = post("/v1/propose", req.dump());
  std::vector<RawProposal> out;
  try {
    const auto j = nlohmann::json::parse(body);
    for (const auto &p: j.at("proposals"))
      out.push_back({ p.at("smarts").get<std::string>(), p.at("log_prob").get<double>() });
  } catch (const nlohmann::json::exception &e) {
    throw BackendUnavailable(std::string("malformed /v1/propose response: ") + e.what());
  }
  return out;
}

std::vector<RouteSample> HttpPolicy::propose_routes(
    const Molecule &target, int n_samples,
    const std::optional<std::string> &condition) const {
  nlohmann::json req { { "smiles", canonical_smiles(target) },
                       { "n_samples", n_samples } };
  if (condition)
    req["condition"] = *condition;
  const std::string body = post("/v1/propose_route", req.dump());
  std::vector<RouteSample> out;
  try {
    const auto j = nlohmann::json::parse(body);
    for (const auto &r: j.at("routes"))
      out.push_back({ r.at("templates").get<std::vector<std::string>>(),
                      r.at("log_prob").get<double>() });
  } catch (const nlohmann::json::exception &e) {
    throw BackendUnavailable(std::string("malformed /v1/propose_route response: ")
                             + e.what());
  }
  return out;
}

}  // namespace retro
