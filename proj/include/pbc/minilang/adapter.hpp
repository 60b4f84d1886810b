#pragma once

#include "pbc/adapter.hpp"
#include "pbc/minilang/ast.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace pbc::minilang {

// One enumerated statement with its structural context.
struct StmtEntry {
    Statement stmt;
    int file = 0;         // index into parsed()
    int arena = 0;        // index into ParsedFile::stmts
    int func = 0;         // function index within the file
    int parent_entry = -1; // enclosing block/if/while entry, -1 for function-body statements
    int sibling_prev = -1; // entry indices within the same statement list
    int sibling_next = -1;
    int pos = 0;           // position within the statement list, -1 for attached blocks
};

class MiniSnapshot : public Snapshot {
public:
    const FileMap& files() const override { return files_; }

    const std::vector<ParsedFile>& parsed() const { return parsed_; }
    bool parse_ok() const { return !parse_error_.has_value(); }
    const Diagnostic& parse_diagnostic() const { return *parse_error_; }

    // Mutation universe: statements of non-test files, preorder.
    const std::vector<StmtEntry>& entries() const { return entries_; }
    const StmtEntry* find(const StatementId& id) const;
    const ParsedFile& file_of(const StmtEntry& entry) const;

    bool is_ancestor(int maybe_ancestor, int entry) const;

private:
    friend class MiniSnapshotBuilder;

    FileMap files_;
    std::vector<ParsedFile> parsed_;
    std::optional<Diagnostic> parse_error_;
    std::vector<StmtEntry> entries_;
    std::map<std::string, int> by_id_;
};

class MiniLangAdapter : public TargetAdapter {
public:
    std::string language() const override { return "minilang"; }

    SnapshotPtr load(const std::filesystem::path& root) const override;
    SnapshotPtr from_files(FileMap files) const override;

    std::vector<Statement> enumerate_statements(const Snapshot& snapshot) const override;
    SnapshotPtr render(const Snapshot& snapshot,
                       const std::vector<StatementEdit>& edits) const override;
    CompileOutcome compile(const Snapshot& snapshot) const override;
    TestRunOutcome run_tests(const Snapshot& snapshot,
                             std::chrono::milliseconds suite_timeout) const override;
    std::chrono::milliseconds default_timeout() const override { return std::chrono::seconds(2); }
    const RuleCatalog& catalog() const override;

    FileMap attach_test(FileMap files, const TestSpec& test, const std::string& blob) const override;
};

// Internal helpers shared with the rule catalog.
bool is_test_file(const std::string& path);
const MiniSnapshot& as_mini(const Snapshot& snapshot);

} // namespace pbc::minilang
