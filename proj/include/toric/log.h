/** \file    log.h
    \brief   Minimal diagnostic logging to stderr, controlled by the TORIC_LOG environment variable

    Accepted values: error, warn, info, debug (default: warn).
*/
#pragma once
#include <string>

namespace toric {
namespace log {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// current verbosity, read from TORIC_LOG on first use
Level level();

/// write a message if `lvl` does not exceed the current verbosity
void write(Level lvl, const std::string& origin, const std::string& message);

inline bool enabled(Level lvl) { return static_cast<int>(lvl) <= static_cast<int>(level()); }

}  // namespace log
}  // namespace toric
