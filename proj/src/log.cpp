#include "toric/log.h"
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace toric {
namespace log {

namespace {

Level parseLevel(const char* env)
{
    if(!env) return Level::Warn;
    std::string s(env);
    if(s == "error") return Level::Error;
    if(s == "info")  return Level::Info;
    if(s == "debug") return Level::Debug;
    return Level::Warn;
}

const char* levelName(Level lvl)
{
    switch(lvl) {
        case Level::Error: return "error";
        case Level::Warn:  return "warn";
        case Level::Info:  return "info";
        default:           return "debug";
    }
}

}  // internal namespace

Level level()
{
    static const Level current = parseLevel(std::getenv("TORIC_LOG"));
    return current;
}

void write(Level lvl, const std::string& origin, const std::string& message)
{
    if(!enabled(lvl)) return;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    std::cerr << "[" << levelName(lvl) << "] " << origin << ": " << message << '\n';
}

}  // namespace log
}  // namespace toric
