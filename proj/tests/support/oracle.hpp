#pragma once

#include <cstddef>
#include <filesystem>
#include <map>

namespace testsupport {

// Brute-force enumeration of applicable (statement, rule) pairs over a
// minilang project, written directly from the rule-applicability matrix and
// independent of the injection engine. With one candidate per pair this is
// the expected campaign candidate count.
struct OracleCounts {
    std::size_t statements = 0;
    std::map<int, std::size_t> per_rule; // rule id -> applicable statements
    std::size_t pairs = 0;
};

OracleCounts oracle_enumerate(const std::filesystem::path& project_dir);

} // namespace testsupport
