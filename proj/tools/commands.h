//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_TOOLS_COMMANDS_H_
#define RETRO_TOOLS_COMMANDS_H_

#include <functional>
#include <vector>

#include "cli_common.h"

namespace retro::cli {

struct Command {
  CLI::App *sub = nullptr;
  std::function<int()> run;
};

struct Context {
  GlobalOptions global;
  int argc = 0;
  char **argv = nullptr;
};

void register_pipeline(CLI::App &app, Context &ctx, std::vector<Command> &out);
void register_plan(CLI::App &app, Context &ctx, std::vector<Command> &out);
void register_eval(CLI::App &app, Context &ctx, std::vector<Command> &out);

}  // namespace retro::cli

#endif  // RETRO_TOOLS_COMMANDS_H_
