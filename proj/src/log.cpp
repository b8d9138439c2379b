//
// Project retroplan - Copyright 2026 The retroplan Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "retro/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

namespace retro::log {
namespace {

std::atomic<Level> g_level { Level::kWarning };
std::mutex g_mu;

void emit(Level lvl, std::string_view tag, std::string_view msg) {
  if (lvl < g_level.load(std::memory_order_relaxed))
    return;
  std::lock_guard lock(g_mu);
  std::cerr << "[" << tag << "] " << msg << '\n';
}

}  // namespace

void set_level(Level level) noexcept {
  g_level.store(level, std::memory_order_relaxed);
}

Level level() noexcept {
  return g_level.load(std::memory_order_relaxed);
}

void debug(std::string_view msg) {
  emit(Level::kDebug, "debug", msg);
}

void info(std::string_view msg) {
  emit(Level::kInfo, "info", msg);
}

void warn(std::string_view msg) {
  emit(Level::kWarning, "warn", msg);
}

void error(std::string_view msg) {
  emit(Level::kError, "error", msg);
}

}  // namespace retro::log
