#pragma once

#include <cstdio>
#include <string>

namespace optifab {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Global level, initialized from OPTIFAB_LOG_LEVEL on first use.
LogLevel log_level();
void set_log_level(LogLevel level);

void log_message(LogLevel level, const std::string& msg);

namespace detail {
std::string format_log(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
}  // namespace detail

#define OPTIFAB_LOG(level, ...)                                          \
  do {                                                                   \
    if (static_cast<int>(level) <= static_cast<int>(optifab::log_level())) \
      optifab::log_message(level, optifab::detail::format_log(__VA_ARGS__)); \
  } while (0)

#define LOG_ERROR(...) OPTIFAB_LOG(optifab::LogLevel::kError, __VA_ARGS__)
#define LOG_WARN(...) OPTIFAB_LOG(optifab::LogLevel::kWarn, __VA_ARGS__)
#define LOG_INFO(...) OPTIFAB_LOG(optifab::LogLevel::kInfo, __VA_ARGS__)
#define LOG_DEBUG(...) OPTIFAB_LOG(optifab::LogLevel::kDebug, __VA_ARGS__)

}  // namespace optifab
