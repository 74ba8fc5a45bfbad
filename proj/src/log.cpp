#include "vxr/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace vxr::log {
namespace {

Level from_env() {
  const char* env = std::getenv("VXR_LOG");
  if (env == nullptr) return Level::error;
  const std::string v(env);
  if (v == "debug") return Level::debug;
  if (v == "info") return Level::info;
  return Level::error;
}

std::atomic<int>& threshold() {
  static std::atomic<int> t{static_cast<int>(from_env())};
  return t;
}

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void emit(Level lvl, std::string_view tag, std::string_view msg) {
  if (static_cast<int>(lvl) > threshold().load()) return;
  std::lock_guard<std::mutex> lock(sink_mutex());
  std::cerr << "[vxr " << tag << "] " << msg << '\n';
}

}  // namespace

Level level() { return static_cast<Level>(threshold().load()); }
void set_level(Level lvl) { threshold().store(static_cast<int>(lvl)); }

void error(std::string_view msg) { emit(Level::error, "error", msg); }
// Warnings are shown at info level so that the default run stays quiet.
void warn(std::string_view msg) { emit(Level::info, "warning", msg); }
void info(std::string_view msg) { emit(Level::info, "info", msg); }
void debug(std::string_view msg) { emit(Level::debug, "debug", msg); }

}  // namespace vxr::log
