#pragma once

#include <string_view>

namespace vxr::log {

enum class Level { error = 0, info = 1, debug = 2 };

/// Current threshold. Read once from VXR_LOG (error|info|debug), default error.
Level level();
void set_level(Level lvl);

void error(std::string_view msg);
void warn(std::string_view msg);
void info(std::string_view msg);
void debug(std::string_view msg);

}  // namespace vxr::log
