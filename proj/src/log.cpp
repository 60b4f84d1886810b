#include "pbc/log.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>

namespace pbc::log {
namespace {

std::atomic<bool> g_quiet{false};
std::mutex g_mutex;

bool needs_quoting(const std::string& s) {
    if (s.empty()) return true;
    for (char c : s) {
        if (c == ' ' || c == '"' || c == '=' || c == '\n' || c == '\t') return true;
    }
    return false;
}

std::string quote(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

void emit(const char* level, const std::string& event, const Fields& fields) {
    std::lock_guard<std::mutex> lock(g_mutex);
    std::string line = std::string("level=") + level + " event=" + quote(event);
    for (const auto& [k, v] : fields) {
        line += " " + k + "=" + quote(v);
    }
    std::fprintf(stderr, "%s\n", line.c_str());
}

} // namespace

void set_quiet(bool q) { g_quiet.store(q); }
bool quiet() { return g_quiet.load(); }

void info(const std::string& event, const Fields& fields) {
    if (!g_quiet.load()) emit("info", event, fields);
}

void warn(const std::string& event, const Fields& fields) {
    if (!g_quiet.load()) emit("warn", event, fields);
}

void error(const std::string& event, const Fields& fields) {
    emit("error", event, fields);
}

} // namespace pbc::log
