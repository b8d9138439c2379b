//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RETRO_LOG_H_
#define RETRO_LOG_H_

#include <string_view>

namespace retro::log {

enum class Level { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kOff = 4 };

void set_level(Level level) noexcept;
Level level() noexcept;

// All messages go to standard error.
void debug(std::string_view msg);
void info(std::string_view msg);
void warn(std::string_view msg);
void error(std::string_view msg);

}  // namespace retro::log

#endif  // RETRO_LOG_H_
