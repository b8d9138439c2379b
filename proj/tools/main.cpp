//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "commands.h"
#include "retro/dataset.h"
#include "retro/log.h"

using namespace retro;
using namespace retro::cli;

int main(int argc, char **argv) {
  CLI::App app { "retroplan: template-based retrosynthesis planning" };
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file with one section per command");
  Context ctx;
  ctx.argc = argc;
  ctx.argv = argv;
  app.add_option("--jobs,-j", ctx.global.jobs, "Worker threads for per-record work")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", ctx.global.log_level, "debug, info, warning, error or off")
      ->check(CLI::IsMember({ "debug", "info", "warning", "error", "off" }));
  app.set_version_flag("--version", kToolVersion);

  std::vector<Command> commands;
  register_pipeline(app, ctx, commands);
  register_plan(app, ctx, commands);
  register_eval(app, ctx, commands);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string &lvl = ctx.global.log_level;
  log::set_level(lvl == "debug"     ? log::Level::kDebug
                 : lvl == "warning" ? log::Level::kWarning
                 : lvl == "error"   ? log::Level::kError
                 : lvl == "off"     ? log::Level::kOff
                                    : log::Level::kInfo);

  for (const Command &c: commands) {
    if (!c.sub->parsed())
      continue;
    try {
      return c.run();
    } catch (const UnreadableInput &e) {
      log::error(e.what());
      return kExitUnreadable;
    } catch (const DatasetError &e) {
      log::error(e.what());
      return e.kind() == DatasetError::Kind::kFileUnreadable ? kExitUnreadable
                                                             : kExitSchema;
    } catch (const ConfigError &e) {
      log::error(e.what());
      return kExitConfig;
    } catch (const std::invalid_argument &e) {
      log::error(e.what());
      return kExitConfig;
    } catch (const BackendUnavailable &e) {
      log::error(e.what());
      return kExitPolicyUnreachable;
    } catch (const SchemaMismatch &e) {
      log::error(e.what());
      return kExitSchema;
    }
  }
  return kExitConfig;
}
