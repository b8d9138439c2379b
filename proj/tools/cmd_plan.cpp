//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <memory>

#include "commands.h"
#include "retro/dataset.h"
#include "retro/direct.h"
#include "retro/log.h"
#include "retro/search.h"
#include "retro/smiles.h"

namespace retro::cli {

namespace {

struct TargetArgs {
  std::string targets;
  std::vector<std::string> smiles;
  std::string stock;
  std::string out;
  std::string stats;
  int max_routes = 10;
  PolicyOptions policy;
};

void add_target_options(CLI::App *sub, TargetArgs &a) {
  sub->add_option("--targets", a.targets, "Target file, one 'SMILES [id]' per line");
  sub->add_option("--smiles", a.smiles, "Target SMILES (repeatable)");
  sub->add_option("--stock", a.stock, "Stock file, one SMILES per line")->required();
  sub->add_option("--out", a.out, "Ranked routes JSON")->required();
  sub->add_option("--stats", a.stats, "Per-target statistics JSON");
  sub->add_option("--max-routes", a.max_routes, "Routes kept per target")
      ->check(CLI::PositiveNumber);
  add_policy_options(sub, a.policy);
}

std::vector<Target> collect_targets(const TargetArgs &a, RunManifest &m) {
  std::vector<Target> out;
  if (!a.targets.empty()) {
    m.input(a.targets);
    out = load_targets(a.targets);
  }
  for (std::size_t i = 0; i < a.smiles.size(); ++i)
    out.push_back({ "smiles-" + std::to_string(i + 1), a.smiles[i] });
  if (out.empty())
    throw ConfigError("no targets given (use --targets or --smiles)");
  return out;
}

StockSet read_stock(const std::string &path, RunManifest &m) {
  m.input(path);
  return parse_stock(read_input(path));
}

struct TargetOutput {
  nlohmann::ordered_json routes;
  nlohmann::ordered_json stats;
};

nlohmann::ordered_json target_header(const Target &t) {
  nlohmann::ordered_json j;
  j["id"] = t.id;
  j["target"] = t.smiles;
  return j;
}

void write_outputs(const TargetArgs &a, const std::vector<TargetOutput> &results,
                   RunManifest &m) {
  nlohmann::ordered_json routes, stats;
  routes["targets"] = nlohmann::ordered_json::array();
  stats["targets"] = nlohmann::ordered_json::array();
  int solved = 0;
  for (const TargetOutput &r: results) {
    routes["targets"].push_back(r.routes);
    stats["targets"].push_back(r.stats);
    solved += r.routes.value("solved", false) ? 1 : 0;
  }
  write_atomic(a.out, routes.dump(2) + "\n");
  m.output(a.out);
  const std::string stats_path = a.stats.empty() ? a.out + ".stats.json" : a.stats;
  write_atomic(stats_path, stats.dump(2) + "\n");
  m.output(stats_path);
  std::cout << "solved " << solved << " of " << results.size() << " targets\n";
}

struct PlanArgs {
  TargetArgs t;
  SearchConfig cfg;
  std::string library;
};

int run_plan(const PlanArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("plan", sub, ctx.argc, ctx.argv);
  SearchConfig cfg = a.cfg;
  try {
    cfg.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  const std::vector<Target> targets = collect_targets(a.t, m);
  const StockSet stock = read_stock(a.t.stock, m);
  TemplateLibrary library;
  if (!a.library.empty()) {
    m.input(a.library);
    try {
      library = TemplateLibrary::parse(read_input(a.library));
    } catch (const TemplateError &e) {
      throw SchemaMismatch(a.library + ": " + e.what());
    }
  }
  cfg.library = a.library.empty() ? nullptr : &library;
  const std::unique_ptr<PolicyBackend> policy = make_policy(a.t.policy, m);

  const auto results = parallel_map<TargetOutput>(
      static_cast<int>(targets.size()), ctx.global.jobs, [&](int i) {
        const Target &t = targets[i];
        TargetOutput out { target_header(t), target_header(t) };
        Molecule mol;
        try {
          mol = parse_smiles(t.smiles);
        } catch (const std::exception &e) {
          log::warn("target '" + t.id + "': " + e.what());
          out.routes["solved"] = false;
          out.routes["error"] = e.what();
          out.routes["routes"] = nlohmann::ordered_json::array();
          return out;
        }
        const SearchResult res = run_search(mol, *policy, stock, cfg);
        out.routes["solved"] = res.stats.solved;
        out.routes["routes"] = nlohmann::ordered_json::array();
        for (const RouteTree &r: extract_routes(res, stock, a.t.max_routes))
          out.routes["routes"].push_back(route_to_json(r));
        out.stats.update(res.stats.to_json());
        out.stats["policy_calls"] = res.stats.policy_calls;
        out.stats["rewrite_conflicts"] = res.stats.rewrite_conflicts;
        return out;
      });
  write_outputs(a.t, results, m);
  m.write();
  return kExitOk;
}

struct DirectArgs {
  TargetArgs t;
  std::string variant = "vanilla";
};

int run_direct(const DirectArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("direct-plan", sub, ctx.argc, ctx.argv);
  const DirectVariant variant = parse_direct_variant(a.variant);
  const std::vector<Target> targets = collect_targets(a.t, m);
  const StockSet stock = read_stock(a.t.stock, m);
  const std::unique_ptr<PolicyBackend> policy = make_policy(a.t.policy, m);
  m.set("variant", direct_variant_name(variant));
  m.set("samples_per_target", scan_sample_count(variant));

  const auto results = parallel_map<TargetOutput>(
      static_cast<int>(targets.size()), ctx.global.jobs, [&](int i) {
        const Target &t = targets[i];
        TargetOutput out { target_header(t), target_header(t) };
        out.routes["routes"] = nlohmann::ordered_json::array();
        out.routes["route_meta"] = nlohmann::ordered_json::array();
        Molecule mol;
        try {
          mol = parse_smiles(t.smiles);
        } catch (const std::exception &e) {
          log::warn("target '" + t.id + "': " + e.what());
          out.routes["solved"] = false;
          out.routes["error"] = e.what();
          return out;
        }
        ScanStats st;
        const auto ranked = dedup_direct_routes(
            rank_direct_routes(condition_scan(mol, *policy, variant, &stock, &st)));
        bool solved = false;
        for (std::size_t r = 0; r < ranked.size(); ++r) {
          solved = solved || route_solved(ranked[r].route);
          if (static_cast<int>(r) >= a.t.max_routes)
            continue;
          out.routes["routes"].push_back(route_to_json(ranked[r].route));
          out.routes["route_meta"].push_back(
              { { "log_prob", ranked[r].log_prob },
                { "condition", ranked[r].condition ? nlohmann::ordered_json(*ranked[r].condition)
                                                   : nlohmann::ordered_json(nullptr) },
                { "sample_index", ranked[r].sample_index } });
        }
        out.routes["solved"] = solved;
        out.stats["solved"] = solved;
        out.stats["requested"] = st.requested;
        out.stats["received"] = st.received;
        out.stats["routes"] = st.routes;
        out.stats["distinct_routes"] = ranked.size();
        return out;
      });
  write_outputs(a.t, results, m);
  m.write();
  return kExitOk;
}

}  // namespace

void register_plan(CLI::App &app, Context &ctx, std::vector<Command> &out) {
  {
    auto a = std::make_shared<PlanArgs>();
    auto *sub = app.add_subcommand("plan", "Tree search planning");
    add_target_options(sub, a->t);
    sub->add_option("--c-pucb", a->cfg.c_pucb, "Exploration constant");
    sub->add_option("--temperature", a->cfg.temperature, "Prior softmax temperature");
    sub->add_option("--expansions", a->cfg.expansions, "Templates proposed per expansion");
    sub->add_option("--max-iterations", a->cfg.max_iterations, "Iteration budget");
    sub->add_option("--time-limit", a->cfg.time_limit_s, "Wall-clock budget in seconds");
    sub->add_option("--q-init", a->cfg.q_init, "Initial node value");
    sub->add_flag("--strict", a->cfg.strict, "Only use templates present in --library");
    sub->add_option("--library", a->library, "Template library JSONL for --strict");
    out.push_back({ sub, [a, &ctx, sub] { return run_plan(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<DirectArgs>();
    auto *sub = app.add_subcommand("direct-plan", "Whole-route template sequence planning");
    add_target_options(sub, a->t);
    sub->add_option("--variant", a->variant, "vanilla, n-step, 9-step or leaf-size")
        ->check(CLI::IsMember({ "vanilla", "n-step", "9-step", "leaf-size" }));
    out.push_back({ sub, [a, &ctx, sub] { return run_direct(*a, ctx, sub); } });
  }
}

}  // namespace retro::cli
