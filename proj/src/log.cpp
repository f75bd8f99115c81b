#include "nwv/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace nwv {

namespace {

LogLevel parse_level(const char* env) {
  if (env == nullptr) return LogLevel::kWarn;
  const std::string value(env);
  if (value == "error" || value == "0") return LogLevel::kError;
  if (value == "warn" || value == "warning" || value == "1")
    return LogLevel::kWarn;
  if (value == "info" || value == "2") return LogLevel::kInfo;
  if (value == "debug" || value == "3") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::kError:
      return "error";
    case LogLevel::kWarn:
      return "warn";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kDebug:
      return "debug";
  }
  return "?";
}

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level(std::getenv("NWV_LOG"));
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::lock_guard<std::mutex> lock(log_mutex());
  std::cerr << "[nwv:" << level_tag(level) << "] " << message << "\n";
}

}  // namespace nwv
