#pragma once

#include "pbc/model.hpp"
#include "pbc/rules.hpp"
#include "pbc/util.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace pbc {

enum class StmtKind { Declaration, Assignment, Call, If, While, Return, Block };

std::string to_string(StmtKind kind);

struct Statement {
    StatementId id;
    StmtKind kind = StmtKind::Call;
    CodeLocation span;    // before-side only: file + line span
    std::size_t node = 0; // opaque adapter-internal handle
};

struct Diagnostic {
    std::string code;
    std::string message;
    std::string file;
    int line = 0;
};

struct CompileOutcome {
    bool ok = true;
    std::vector<Diagnostic> diagnostics; // sorted by (file, line)
};

struct TestResult {
    enum class Status { Pass, Fail, Timeout };

    Status status = Status::Pass;
    std::string failure_kind; // assertion | exception | timeout | crash
    std::string message;

    bool passed() const { return status == Status::Pass; }
};

struct TestRunOutcome {
    std::map<std::string, TestResult> results; // keyed (and ordered) by test name

    bool all_passed() const;
    std::vector<std::string> failing_names() const;
};

// An immutable view of one project state; concrete content depends on the
// adapter.
class Snapshot {
public:
    virtual ~Snapshot() = default;
    virtual const FileMap& files() const = 0;
};

using SnapshotPtr = std::shared_ptr<const Snapshot>;

// Adapter-supplied rule applicability and rewrite generation.
class RuleCatalog {
public:
    virtual ~RuleCatalog() = default;

    // Rules (ascending id) for which at least one rewrite exists.
    virtual std::vector<InjectionRule> applicable(const Snapshot& snapshot,
                                                  const Statement& stmt) const = 0;

    // At most `cap` candidates, chosen deterministically from the rule's
    // rewrite catalog by seeded selection.
    virtual std::vector<MutantCandidate> candidates(const Snapshot& snapshot, const Statement& stmt,
                                                    const InjectionRule& rule, std::uint64_t seed,
                                                    int cap) const = 0;
};

// A codebase that can be parsed, mutated, compiled and tested.
class TargetAdapter {
public:
    virtual ~TargetAdapter() = default;

    virtual std::string language() const = 0;

    virtual SnapshotPtr load(const std::filesystem::path& root) const = 0;
    virtual SnapshotPtr from_files(FileMap files) const = 0;

    // Deterministic order: file path lexicographic, then source position;
    // block statements are followed by their children.
    virtual std::vector<Statement> enumerate_statements(const Snapshot& snapshot) const = 0;

    // Applies edits to distinct statements; unedited bytes are preserved.
    virtual SnapshotPtr render(const Snapshot& snapshot,
                               const std::vector<StatementEdit>& edits) const = 0;

    virtual CompileOutcome compile(const Snapshot& snapshot) const = 0;

    // Pre: compile(snapshot).ok. Zero timeout means the adapter default.
    virtual TestRunOutcome run_tests(const Snapshot& snapshot,
                                     std::chrono::milliseconds suite_timeout) const = 0;

    virtual std::chrono::milliseconds default_timeout() const = 0;

    virtual const RuleCatalog& catalog() const = 0;

    // Places a new failing-test payload into a file tree before a
    // reproduction run. The default drops the blob under testcases/.
    virtual FileMap attach_test(FileMap files, const TestSpec& test, const std::string& blob) const;
};

} // namespace pbc
