#ifndef NPRSIM_LOG_HPP
#define NPRSIM_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace nprsim {

// Logging verbosity comes from the TOOL_LOG environment variable
// (error | info | debug); default is error.
enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("TOOL_LOG");
    if (env == nullptr) return LogLevel::kError;
    if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
    if (std::strcmp(env, "info") == 0) return LogLevel::kInfo;
    return LogLevel::kError;
  }();
  return level;
}

inline void log_msg(LogLevel level, const std::string& msg) {
  if (level <= log_level()) {
    const char* tag = level == LogLevel::kError
                          ? "error"
                          : (level == LogLevel::kInfo ? "info" : "debug");
    std::fprintf(stderr, "[nprsim %s] %s\n", tag, msg.c_str());
  }
}

inline void log_info(const std::string& msg) { log_msg(LogLevel::kInfo, msg); }
inline void log_error(const std::string& msg) { log_msg(LogLevel::kError, msg); }
inline void log_debug(const std::string& msg) { log_msg(LogLevel::kDebug, msg); }

}  // namespace nprsim

#endif
