#pragma once

#include "pbc/model.hpp"
#include "pbc/util.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace pbc::git {

struct CommitPair {
    std::filesystem::path repo_path;
    std::string fix_revision;
    std::string parent_revision; // always the first parent
};

enum class Side { Before, After };

// Resolves a revision expression to the fix commit and its first parent.
// Throws RevisionNotFound for unknown revisions, RootCommit for parentless
// commits and MergeCommit for multi-parent commits (both are skipped by
// callers with a logged reason).
CommitPair resolve_commit(const std::filesystem::path& repo_path, const std::string& revision_expr);

// Zero-context hunks between the pair's parent and fix revisions, one per
// contiguous changed region, sorted by (file, position). Binary files are
// skipped; renames are recorded as delete + add.
std::vector<DiffHunk> diff_hunks(const CommitPair& pair);

// Contents of the files touched by the diff, at the requested side's
// revision. Files absent on that side (added/deleted) are omitted.
FileMap snapshot(const CommitPair& pair, Side side);

// Full tree at a revision (plumbing for reproduction runs).
FileMap tree_at(const std::filesystem::path& repo_path, const std::string& revision);

// ISO-8601 committer date of a revision.
std::string commit_date(const std::filesystem::path& repo_path, const std::string& revision);

// Commit messages, newest first.
struct CommitMessage {
    std::string revision;
    std::string message;
};
std::vector<CommitMessage> log_messages(const std::filesystem::path& repo_path);

// Exposed for the unified-diff parser tests.
std::vector<DiffHunk> parse_unified_diff(const std::string& diff_text);

} // namespace pbc::git
