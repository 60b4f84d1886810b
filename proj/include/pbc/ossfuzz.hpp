#pragma once

#include "pbc/adapter.hpp"
#include "pbc/gitminer.hpp"
#include "pbc/model.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pbc::ossfuzz {

struct OssFuzzIssue {
    long issue_id = 0;
    std::string crash_type;
    std::string project;
    std::optional<std::string> testcase; // raw blob when downloadable
    bool testcase_denied = false;
};

// Finds issue identifiers in commit messages; one pair per distinct id per
// commit, commits newest first, ids ascending within a commit.
std::vector<std::pair<std::string, long>> scan_commit_messages(
    const std::filesystem::path& repo_path);

// Identifier extraction over one message (exposed for tests).
std::vector<long> extract_issue_ids(const std::string& message);

class OssFuzzSource {
public:
    virtual ~OssFuzzSource() = default;
    // Throws IssueNotFound / AccessDenied (the latter only when the issue
    // itself is unreadable; a denied testcase still yields an issue).
    virtual OssFuzzIssue resolve(long issue_id) = 0;
};

// Fixture layout: <dir>/issues/<id>.json plus optional blobs under
// <dir>/testcases/.
class FixtureOssFuzzSource : public OssFuzzSource {
public:
    explicit FixtureOssFuzzSource(std::filesystem::path dir);
    OssFuzzIssue resolve(long issue_id) override;

private:
    std::filesystem::path dir_;
};

std::unique_ptr<OssFuzzSource> make_live_source(const std::string& endpoint, int max_attempts);

struct ReproResult {
    enum class Verdict { Reproducible, NotReproducible, Inconclusive };

    std::map<std::string, bool> buggy_side; // test name -> passed
    std::map<std::string, bool> fixed_side;
    Verdict verdict = Verdict::Inconclusive;
    std::string note; // diagnostic when inconclusive
};

std::string to_string(ReproResult::Verdict verdict);

// Runs the record's suite (plus attached new tests) against the buggy and
// fixed trees. Reproducible iff every test passes on the fixed side and at
// least one fails on the buggy side; build failure on either side is
// inconclusive.
ReproResult reproduce(const BugRecord& record, const TargetAdapter& adapter,
                      const FileMap& buggy_tree, const FileMap& fixed_tree,
                      const std::filesystem::path& dataset_dir,
                      std::chrono::milliseconds per_test_timeout = std::chrono::seconds(300));

} // namespace pbc::ossfuzz
