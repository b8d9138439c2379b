//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>
#include <memory>

#include "commands.h"
#include "retro/dataset.h"
#include "retro/log.h"
#include "retro/tokenizer.h"

namespace retro::cli {

namespace {

std::vector<ReactionRecord> read_records(const std::string &path, RunManifest &m,
                                         int *errors) {
  m.input(path);
  std::vector<LineIssue> issues;
  auto records = parse_reactions(read_input(path), &issues);
  *errors = static_cast<int>(issues.size());
  return records;
}

// Template SMARTS for a record, extracted when absent.
std::optional<std::string> record_template(const ReactionRecord &r, int radius) {
  if (r.template_smarts)
    return r.template_smarts;
  try {
    return canonical_template_smarts(extract_template(r.reaction, radius));
  } catch (const std::exception &e) {
    log::warn("record '" + r.id + "': " + e.what());
    return std::nullopt;
  }
}

struct FilterArgs {
  std::string in, out, report;
};

int run_filter(const FilterArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("filter", sub, ctx.argc, ctx.argv);
  int errors = 0;
  const auto records = read_records(a.in, m, &errors);
  const auto results = parallel_map<FilterResult>(
      static_cast<int>(records.size()), ctx.global.jobs,
      [&](int i) { return filter_reaction(records[i]); });

  std::vector<ReactionRecord> kept;
  std::vector<int> rejections(kNumFilterRules, 0);
  int modified = 0;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const FilterResult &r: results) {
    if (!r.report.removed_reactants.empty())
      ++modified;
    nlohmann::ordered_json failed = nlohmann::ordered_json::array();
    for (FilterRule f: r.report.failed()) {
      ++rejections[static_cast<int>(f)];
      failed.push_back(filter_rule_name(f));
    }
    rows.push_back({ { "id", r.modified.id }, { "accepted", r.accept },
                     { "failed", failed },
                     { "removed_reactants", r.report.removed_reactants } });
    if (r.accept)
      kept.push_back(r.modified);
  }

  nlohmann::ordered_json rules = nlohmann::ordered_json::object();
  for (FilterRule f: all_filter_rules())
    rules[filter_rule_name(f)] = rejections[static_cast<int>(f)];
  nlohmann::ordered_json report;
  report["total"] = records.size();
  report["accepted"] = kept.size();
  report["rejected"] = records.size() - kept.size();
  report["modified"] = modified;
  report["unparseable_lines"] = errors;
  report["rule_failures"] = rules;
  report["records"] = rows;

  write_atomic(a.out, reactions_to_jsonl(kept));
  m.output(a.out);
  if (!a.report.empty()) {
    write_atomic(a.report, report.dump(2) + "\n");
    m.output(a.report);
  }
  for (FilterRule f: all_filter_rules())
    std::cout << filter_rule_name(f) << ' ' << rejections[static_cast<int>(f)] << '\n';
  std::cout << "accepted " << kept.size() << " of " << records.size() << '\n';
  m.write();
  return kExitOk;
}

struct ExtractArgs {
  std::string in, out;
  int radius = kDefaultTemplateRadius;
};

int run_extract(const ExtractArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("extract-templates", sub, ctx.argc, ctx.argv);
  int errors = 0;
  auto records = read_records(a.in, m, &errors);
  const auto templates = parallel_map<std::optional<std::string>>(
      static_cast<int>(records.size()), ctx.global.jobs, [&](int i) {
        ReactionRecord copy = records[i];
        copy.template_smarts.reset();
        return record_template(copy, a.radius);
      });
  std::vector<ReactionRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!templates[i]) {
      ++errors;
      continue;
    }
    records[i].template_smarts = *templates[i];
    records[i].template_hash = template_hash(*templates[i]);
    out.push_back(std::move(records[i]));
  }
  write_atomic(a.out, reactions_to_jsonl(out));
  m.output(a.out);
  m.set("radius", a.radius);
  std::cout << "extracted " << out.size() << " templates; " << errors << " failures\n";
  m.write();
  return kExitOk;
}

struct LibraryArgs {
  std::string in, out;
  int min_count = 1;
  int radius = kDefaultTemplateRadius;
};

int run_build_library(const LibraryArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("build-library", sub, ctx.argc, ctx.argv);
  int errors = 0;
  const auto records = read_records(a.in, m, &errors);
  TemplateLibrary lib;
  for (const ReactionRecord &r: records) {
    const auto smarts = record_template(r, a.radius);
    if (!smarts)
      continue;
    try {
      lib.add(parse_template(*smarts));
    } catch (const std::exception &e) {
      log::warn("record '" + r.id + "': " + e.what());
    }
  }
  const TemplateLibrary kept = lib.filtered(a.min_count);
  write_atomic(a.out, kept.to_jsonl());
  m.output(a.out);
  m.set("templates", kept.size());
  std::cout << "library " << kept.size() << " templates (" << lib.size()
            << " before min-count " << a.min_count << ")\n";
  m.write();
  return kExitOk;
}

struct RoutesArgs {
  std::string in, out;
};

int run_build_routes(const RoutesArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("build-routes", sub, ctx.argc, ctx.argv);
  int errors = 0;
  const auto records = read_records(a.in, m, &errors);
  RouteBuildStats st;
  const auto routes = build_routes(records, &st);
  std::string text;
  for (const RouteTree &r: routes)
    text += route_to_json(r).dump() + "\n";
  write_atomic(a.out, text);
  m.output(a.out);
  std::cout << "routes " << routes.size() << "; dropped single-step " << st.single_step
            << ", loops " << st.loops << ", duplicates " << st.duplicates
            << ", sub-routes " << st.subroutes << '\n';
  m.write();
  return kExitOk;
}

struct SplitArgs {
  std::string in, mode = "hard", library, train_out, test_out;
  int rarity_cutoff = kDefaultRarityCutoff;
  double threshold = kDefaultMolWeightThreshold;
};

int run_split(const SplitArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("split", sub, ctx.argc, ctx.argv);
  int errors = 0;
  const auto records = read_records(a.in, m, &errors);
  std::pair<std::vector<ReactionRecord>, std::vector<ReactionRecord>> parts;
  if (a.mode == "hard") {
    TemplateLibrary lib;
    if (!a.library.empty()) {
      m.input(a.library);
      try {
        lib = TemplateLibrary::parse(read_input(a.library));
      } catch (const TemplateError &e) {
        throw SchemaMismatch(a.library + ": " + e.what());
      }
    } else {
      for (const ReactionRecord &r: records)
        if (auto s = record_template(r, kDefaultTemplateRadius))
          lib.add(parse_template(*s));
    }
    parts = build_hard_split(records, lib, a.rarity_cutoff);
  } else {
    parts = split_by_molweight(records, a.threshold);
  }
  write_atomic(a.train_out, reactions_to_jsonl(parts.first));
  write_atomic(a.test_out, reactions_to_jsonl(parts.second));
  m.output(a.train_out);
  m.output(a.test_out);
  std::cout << "train " << parts.first.size() << ", test " << parts.second.size() << '\n';
  m.write();
  return kExitOk;
}

struct BpeArgs {
  std::string library, out;
  int target_vocab = reference_vocab::kBpeTemplate;
  int threshold = kWholeTemplateThreshold;
};

int run_train_bpe(const BpeArgs &a, const Context &ctx, const CLI::App *sub) {
  RunManifest m("train-bpe", sub, ctx.argc, ctx.argv);
  m.input(a.library);
  TemplateLibrary lib;
  try {
    lib = TemplateLibrary::parse(read_input(a.library));
  } catch (const TemplateError &e) {
    throw SchemaMismatch(a.library + ": " + e.what());
  }
  std::vector<std::string> corpus;
  for (const auto &[hash, e]: lib.entries())
    for (int i = 0; i < e.count; ++i)
      corpus.push_back(e.smarts);
  BpeModel bpe;
  try {
    bpe = bpe_train(corpus, a.target_vocab);
  } catch (const TokenizerError &e) {
    throw ConfigError(e.what());
  }
  const FrequencyTemplateTokenizer freq(lib, bpe, a.threshold);
  std::vector<std::string> whole;
  for (const std::string &h: freq.whole_hashes())
    whole.push_back(lib.entries().at(h).smarts);
  write_atomic(a.out, bpe.to_json(whole));
  m.output(a.out);
  m.set("target_vocab", a.target_vocab);
  m.set("bpe_model_size", bpe.model_size());
  m.set("frequency_vocab_size", freq.vocab_size());
  m.set("reference_vocab", { { "bpe_template", reference_vocab::kBpeTemplate },
                             { "smiles", reference_vocab::kSmiles },
                             { "frequency_template", reference_vocab::kFrequencyTemplate } });
  std::cout << "bpe tokens " << bpe.model_size() << " (target " << a.target_vocab
            << "), whole-template tokens " << whole.size() << '\n';
  m.write();
  return kExitOk;
}

}  // namespace

void register_pipeline(CLI::App &app, Context &ctx, std::vector<Command> &out) {
  {
    auto a = std::make_shared<FilterArgs>();
    auto *sub = app.add_subcommand("filter", "Apply the reaction filter rules");
    sub->add_option("--in", a->in, "Reaction JSONL")->required();
    sub->add_option("--out", a->out, "Accepted reactions JSONL")->required();
    sub->add_option("--report", a->report, "Per-rule report JSON");
    out.push_back({ sub, [a, &ctx, sub] { return run_filter(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<ExtractArgs>();
    auto *sub = app.add_subcommand("extract-templates", "Extract one template per reaction");
    sub->add_option("--in", a->in, "Reaction JSONL")->required();
    sub->add_option("--out", a->out, "Reaction JSONL with templates")->required();
    sub->add_option("--radius", a->radius, "Neighborhood radius around the center")
        ->check(CLI::NonNegativeNumber);
    out.push_back({ sub, [a, &ctx, sub] { return run_extract(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<RoutesArgs>();
    auto *sub = app.add_subcommand("build-routes", "Chain reactions into multi-step routes");
    sub->add_option("--in", a->in, "Reaction JSONL with patent ids")->required();
    sub->add_option("--out", a->out, "Route JSONL")->required();
    out.push_back({ sub, [a, &ctx, sub] { return run_build_routes(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<SplitArgs>();
    auto *sub = app.add_subcommand("split", "Hard-set or molecular-weight split");
    sub->add_option("--in", a->in, "Reaction JSONL")->required();
    sub->add_option("--mode", a->mode, "hard or molweight")
        ->check(CLI::IsMember({ "hard", "molweight" }));
    sub->add_option("--library", a->library, "Template library JSONL (hard mode)");
    sub->add_option("--rarity-cutoff", a->rarity_cutoff,
                    "Templates seen at most this often are rare");
    sub->add_option("--threshold", a->threshold, "Product weight threshold in Da");
    sub->add_option("--train-out", a->train_out, "Training reactions JSONL")->required();
    sub->add_option("--test-out", a->test_out, "Test reactions JSONL")->required();
    out.push_back({ sub, [a, &ctx, sub] { return run_split(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<LibraryArgs>();
    auto *sub = app.add_subcommand("build-library", "Count templates into a library");
    sub->add_option("--in", a->in, "Reaction JSONL")->required();
    sub->add_option("--out", a->out, "Template library JSONL")->required();
    sub->add_option("--min-count", a->min_count, "Keep templates seen at least this often")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--radius", a->radius, "Extraction radius for records without templates");
    out.push_back({ sub, [a, &ctx, sub] { return run_build_library(*a, ctx, sub); } });
  }
  {
    auto a = std::make_shared<BpeArgs>();
    auto *sub = app.add_subcommand("train-bpe", "Train template BPE and whole-template tokens");
    sub->add_option("--library", a->library, "Template library JSONL")->required();
    sub->add_option("--out", a->out, "Vocabulary JSON")->required();
    sub->add_option("--target-vocab", a->target_vocab, "Alphabet plus merges")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threshold", a->threshold,
                    "Templates seen more often become single tokens");
    out.push_back({ sub, [a, &ctx, sub] { return run_train_bpe(*a, ctx, sub); } });
  }
}

}  // namespace retro::cli
