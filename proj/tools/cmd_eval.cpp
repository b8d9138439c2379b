//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "commands.h"
#include "retro/evalmetrics.h"
#include "retro/log.h"

namespace retro::cli {

namespace {

// Parses JSON Lines, raising SchemaMismatch with the file and line.
template <class Fn>
void each_json_line(const std::string &path, const std::string &text, Fn fn) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      fn(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception &e) {
      throw SchemaMismatch(path + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const SchemaMismatch &e) {
      throw SchemaMismatch(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string id_of(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("id"))
    throw SchemaMismatch("missing \"id\"");
  return j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
}

std::vector<std::string> smiles_list(const nlohmann::json &j, const char *field) {
  if (j.is_string())
    return { j.get<std::string>() };
  if (!j.is_array())
    throw SchemaMismatch(std::string("\"") + field + "\" must be a string or an array");
  return j.get<std::vector<std::string>>();
}

struct ReportArgs {
  std::string predictions, truth, report, csv, strata = "none";
  int kmax = 10;
};

void emit(const ReportArgs &a, const EvalReport &rep, RunManifest &m) {
  if (!a.report.empty()) {
    write_atomic(a.report, rep.to_json().dump(2) + "\n");
    m.output(a.report);
  }
  if (!a.csv.empty()) {
    write_atomic(a.csv, rep.to_csv());
    m.output(a.csv);
  }
  std::cout << rep.to_text();
  m.write();
}

EvalReport make_report(const std::vector<TargetOutcome> &outcomes, const std::string &strata,
                       int kmax) {
  try {
    if (strata == "template-frequency")
      return stratified_report(outcomes, Stratum::kTemplateFrequency, kmax);
    if (strata == "route-length")
      return stratified_report(outcomes, Stratum::kRouteLength, kmax);
  } catch (const MissingStratumMetadata &e) {
    throw SchemaMismatch(e.what());
  }
  return summary_report(outcomes, kmax);
}

struct SingleStepArgs {
  ReportArgs r;
  std::string placement = "pessimistic";
};

int run_single_step(const SingleStepArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("eval-single-step", sub, ctx.argc, ctx.argv);
  m.input(a.r.predictions);
  m.input(a.r.truth);
  const std::string pred_text = read_input(a.r.predictions);
  const std::string truth_text = read_input(a.r.truth);

  std::map<std::string, std::vector<TemplateOutcomes>> preds;
  each_json_line(a.r.predictions, pred_text, [&](const nlohmann::json &j) {
    const std::string id = id_of(j);
    if (!j.contains("predictions") || !j["predictions"].is_array())
      throw SchemaMismatch("missing \"predictions\" array");
    std::vector<TemplateOutcomes> ranked;
    for (const auto &p: j["predictions"]) {
      if (!p.is_object() || !p.contains("sets") || !p["sets"].is_array())
        throw SchemaMismatch("prediction entries need a \"sets\" array");
      TemplateOutcomes t;
      for (const auto &s: p["sets"])
        t.sets.push_back(smiles_list(s, "sets"));
      ranked.push_back(std::move(t));
    }
    preds[id] = std::move(ranked);
  });

  std::vector<SingleStepCase> cases;
  std::vector<TargetOutcome> outcomes;
  each_json_line(a.r.truth, truth_text, [&](const nlohmann::json &j) {
    TargetOutcome o;
    o.id = id_of(j);
    if (!j.contains("reactants"))
      throw SchemaMismatch("missing \"reactants\"");
    SingleStepCase c;
    c.ground_truth = smiles_list(j["reactants"], "reactants");
    if (auto it = preds.find(o.id); it != preds.end())
      c.ranked = it->second;
    if (j.contains("template_frequency"))
      o.template_frequency = j["template_frequency"].get<int>();
    cases.push_back(std::move(c));
    outcomes.push_back(std::move(o));
  });

  const TopKResult topk = topk_single_step(
      cases, a.r.kmax,
      a.placement == "optimistic" ? Placement::kOptimistic : Placement::kPessimistic);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    outcomes[i].rank = topk.ranks[i];
    outcomes[i].solved = topk.ranks[i].has_value();
  }
  EvalReport rep = make_report(outcomes, a.r.strata, a.r.kmax);
  rep.invalid = topk.invalid;
  rep.duplicates = topk.duplicates;
  m.set("placement", a.placement);
  emit(a.r, rep, m);
  return kExitOk;
}

int run_routes(const ReportArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("eval-routes", sub, ctx.argc, ctx.argv);
  m.input(a.predictions);
  m.input(a.truth);
  const std::string pred_text = read_input(a.predictions);
  const std::string truth_text = read_input(a.truth);

  struct Predicted {
    bool solved = false;
    std::vector<RouteNode> routes;
  };
  std::map<std::string, Predicted> preds;
  try {
    const auto doc = nlohmann::json::parse(pred_text);
    if (!doc.contains("targets") || !doc["targets"].is_array())
      throw SchemaMismatch("missing \"targets\" array");
    for (std::size_t i = 0; i < doc["targets"].size(); ++i) {
      const auto &t = doc["targets"][i];
      try {
        Predicted p;
        p.solved = t.value("solved", false);
        for (const auto &r: t.value("routes", nlohmann::json::array()))
          p.routes.push_back(canonicalize_labels(route_from_json(r)));
        preds[id_of(t)] = std::move(p);
      } catch (const std::invalid_argument &e) {
        throw SchemaMismatch("target " + std::to_string(i) + ": " + e.what());
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw SchemaMismatch(a.predictions + ": " + e.what());
  } catch (const SchemaMismatch &e) {
    throw SchemaMismatch(a.predictions + ": " + e.what());
  }

  std::vector<std::vector<RouteNode>> predicted;
  std::vector<RouteNode> truth;
  std::vector<TargetOutcome> outcomes;
  each_json_line(a.truth, truth_text, [&](const nlohmann::json &j) {
    TargetOutcome o;
    o.id = id_of(j);
    if (!j.contains("route"))
      throw SchemaMismatch("missing \"route\"");
    try {
      truth.push_back(canonicalize_labels(route_from_json(j["route"])));
    } catch (const std::invalid_argument &e) {
      throw SchemaMismatch(e.what());
    }
    o.ground_truth_length = route_steps(truth.back());
    Predicted p;
    if (auto it = preds.find(o.id); it != preds.end())
      p = it->second;
    else
      log::warn("no prediction for target '" + o.id + "'");
    o.solved = p.solved;
    if (!p.routes.empty())
      o.predicted_length = route_steps(p.routes.front());
    predicted.push_back(std::move(p.routes));
    outcomes.push_back(std::move(o));
  });

  const TopKResult acc = route_accuracy(predicted, truth, a.kmax);
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    outcomes[i].rank = acc.ranks[i];
  EvalReport rep = make_report(outcomes, a.strata, a.kmax);
  rep.duplicates = acc.duplicates;
  emit(a, rep, m);
  return kExitOk;
}

void add_report_options(CLI::App *sub, ReportArgs &a, const char *pred_help,
                        const char *truth_help, std::vector<std::string> strata) {
  sub->add_option("--predictions", a.predictions, pred_help)->required();
  sub->add_option("--truth", a.truth, truth_help)->required();
  sub->add_option("--kmax", a.kmax, "Largest k reported")->check(CLI::PositiveNumber);
  sub->add_option("--report", a.report, "Report JSON");
  sub->add_option("--csv", a.csv, "Stratified table CSV");
  sub->add_option("--strata", a.strata, "Breakdown")->check(CLI::IsMember(strata));
}

}  // namespace

void register_eval(CLI::App &app, Context &ctx, std::vector<Command> &out) {
  {
    auto a = std::make_shared<SingleStepArgs>();
    auto *sub = app.add_subcommand("eval-single-step", "Top-k single-step accuracy");
    add_report_options(sub, a->r, "Prediction JSONL {id, predictions: [{sets}]}",
                       "Ground truth JSONL {id, reactants, template_frequency?}",
                       { "none", "template-frequency" });
    sub->add_option("--placement", a->placement,
                    "Where ground truth sits among one template's sites")
        ->check(CLI::IsMember({ "pessimistic", "optimistic" }));
    out.push_back({ sub, [a, &ctx, sub] { return run_single_step(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<ReportArgs>();
    auto *sub = app.add_subcommand("eval-routes", "Route accuracy and solve rate");
    add_report_options(sub, *a, "Routes JSON written by plan or direct-plan",
                       "Ground truth JSONL {id, route}", { "none", "route-length" });
    out.push_back({ sub, [a, &ctx, sub] { return run_routes(*a, ctx, sub); } });
  }
}

}  // namespace retro::cli
