/* Copyright 2026 The ScenarioBench Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SCENARIOBENCH_LOG_HPP_
#define SCENARIOBENCH_LOG_HPP_

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace scenariobench {

enum class LogLevel { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

// Verbosity comes from the SCENARIOBENCH_LOG environment variable
// (quiet|error|warn|info|debug), default warn.
inline LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("SCENARIOBENCH_LOG");
    std::string v = env ? env : "warn";
    if (v == "quiet") return LogLevel::quiet;
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

template <typename... Args>
void log_at(LogLevel lvl, const char* tag, Args&&... args) {
  if (log_level() < lvl) return;
  std::ostringstream oss;
  oss << "[" << tag << "] ";
  (oss << ... << args);
  std::cerr << oss.str() << "\n";
}

template <typename... Args>
void log_error(Args&&... args) {
  log_at(LogLevel::error, "error", std::forward<Args>(args)...);
}
template <typename... Args>
void log_warn(Args&&... args) {
  log_at(LogLevel::warn, "warn", std::forward<Args>(args)...);
}
template <typename... Args>
void log_info(Args&&... args) {
  log_at(LogLevel::info, "info", std::forward<Args>(args)...);
}
template <typename... Args>
void log_debug(Args&&... args) {
  log_at(LogLevel::debug, "debug", std::forward<Args>(args)...);
}

}  // namespace scenariobench

#endif  // SCENARIOBENCH_LOG_HPP_
