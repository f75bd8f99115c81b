#pragma once

#include <string>

namespace nwv {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// Verbosity from the NWV_LOG environment variable ("error", "warn", "info",
/// "debug" or 0..3). Defaults to warn. Parsed once.
LogLevel log_level();

void log_message(LogLevel level, const std::string& message);

inline void log_warn(const std::string& message) {
  log_message(LogLevel::kWarn, message);
}
inline void log_info(const std::string& message) {
  log_message(LogLevel::kInfo, message);
}
inline void log_debug(const std::string& message) {
  log_message(LogLevel::kDebug, message);
}

}  // namespace nwv
