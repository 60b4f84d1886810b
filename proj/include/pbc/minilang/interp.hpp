#pragma once

#include "pbc/adapter.hpp"
#include "pbc/minilang/ast.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace pbc::minilang {

struct TestCase {
    std::string name;
    int file = 0;
    int fn = 0;
};

// Zero-argument functions named test_*, ordered by (file, position).
std::vector<TestCase> discover_tests(const std::vector<ParsedFile>& files);

// Interprets every discovered test. Pre: check_program(files).ok.
// Determinism: a per-test step budget bounds runaway tests; the wall-clock
// suite deadline is only a backstop.
TestRunOutcome run_suite(const std::vector<ParsedFile>& files, std::chrono::milliseconds suite_timeout,
                         std::uint64_t per_test_steps = 2'000'000);

} // namespace pbc::minilang
