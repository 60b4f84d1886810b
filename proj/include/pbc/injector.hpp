#pragma once

#include "pbc/adapter.hpp"
#include "pbc/model.hpp"
#include "pbc/rules.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace pbc {

// Every evaluated mutant falls into exactly one class; benign mutants are
// counted but never recorded.
struct MutantOutcome {
    enum class Kind { Benign, CompilationBug, BehaviorBug };

    Kind kind = Kind::Benign;
    Diagnostic diagnostic;                  // CompilationBug: first error by (file, line)
    std::vector<std::string> failing_tests; // BehaviorBug
    BugType diagnosis;                      // BehaviorBug
};

struct CampaignStats {
    std::size_t statements = 0;
    std::size_t candidates = 0;
    std::size_t benign = 0;
    std::size_t compilation_bugs = 0;
    std::size_t behavior_bugs = 0;
    std::size_t infrastructure_failures = 0;
    double wall_time_s = 0;

    std::string to_kv() const;
};

struct CampaignOptions {
    std::vector<int> rules; // empty = all 16
    std::uint64_t seed = 0;
    int cap = 1;
    int jobs = 1;
    ProjectRef project;
    std::string created_at;
    std::chrono::milliseconds suite_timeout{0}; // 0 = adapter default
};

struct CampaignResult {
    std::vector<BugRecord> records;
    CampaignStats stats;
};

std::vector<InjectionRule> applicable_rules(const TargetAdapter& adapter, const Snapshot& snapshot,
                                            const Statement& stmt);

std::vector<MutantCandidate> generate_candidates(const TargetAdapter& adapter,
                                                 const Snapshot& snapshot, const Statement& stmt,
                                                 const InjectionRule& rule, std::uint64_t seed,
                                                 int cap);

// Renders the candidate, compiles it and, when it compiles, runs the suite.
// Pre: the baseline passes all tests.
MutantOutcome evaluate(const TargetAdapter& adapter, const Snapshot& baseline,
                       const MutantCandidate& candidate,
                       std::chrono::milliseconds suite_timeout = {});

// Failure diagnosis from the first failing test in test-name order.
BugType diagnose_failure(const TestRunOutcome& outcome);

// Synthetic revision id of a file tree (content hash).
std::string tree_revision(const FileMap& files);

// The single hunk between the baseline and mutant version of one file:
// before = mutant (buggy) region, after = original (fix) region.
DiffHunk mutant_hunk(const std::string& file, const std::string& original,
                     const std::string& mutated);

// Full statement x rule x candidate sweep; aborts with BaselineRed /
// FlakyBaseline when the input is not a stable green codebase.
CampaignResult run_campaign(const TargetAdapter& adapter, const std::filesystem::path& project_dir,
                            const CampaignOptions& options);

} // namespace pbc
