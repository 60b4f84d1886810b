#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbc {

struct ProcessResult {
    int exit_code = -1;    // -1 when killed by signal or timeout
    int signal = 0;        // terminating signal, 0 if exited normally
    bool timed_out = false;
    std::string out;
    std::string err;

    bool ok() const { return !timed_out && signal == 0 && exit_code == 0; }
};

struct ProcessOptions {
    std::optional<std::filesystem::path> cwd;
    std::map<std::string, std::string> env; // added on top of the inherited environment
    std::chrono::milliseconds timeout{0};   // 0 = no timeout
};

// Runs argv[0] with the given arguments (no shell), capturing stdout/stderr.
// On timeout the whole process group is killed.
ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& opts = {});

// Runs a command line through /bin/sh -c.
ProcessResult run_shell(const std::string& command, const ProcessOptions& opts = {});

} // namespace pbc
