#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace pbc {

// 1-based inclusive line span; std::nullopt for the empty side of a pure
// insertion or deletion.
using LineSpan = std::optional<std::pair<int, int>>;

struct ProjectRef {
    std::string host;     // e.g. "github.com"
    std::string owner;
    std::string name;
    std::string language; // free-form tag from the tracker/adapter config

    auto operator<=>(const ProjectRef&) const = default;
};

struct CodeLocation {
    std::string file_path; // repo-relative
    LineSpan before_span;
    LineSpan after_span;

    auto operator<=>(const CodeLocation&) const = default;
};

struct DiffHunk {
    CodeLocation location;
    std::string before_text; // exact removed lines, newline-terminated per line
    std::string after_text;  // exact added lines

    const std::string& file() const { return location.file_path; }

    auto operator<=>(const DiffHunk&) const = default;
};

// Exactly one variant is set.
struct BugType {
    enum class Kind { CweId, CrashType, CompileDiagnostic, TestFailure };

    Kind kind = Kind::CweId;
    std::string value;   // CWE id | crash type name | diagnostic code | failure kind
    std::string message; // only for CompileDiagnostic / TestFailure

    static BugType cwe(std::string id);
    static BugType crash(std::string name);
    static BugType compile(std::string code, std::string message);
    static BugType test_failure(std::string failure_kind, std::string message);

    // Key used for type histograms: the CWE id, the crash type, the
    // diagnostic code, or the failure diagnosis.
    std::string display_key() const;

    auto operator<=>(const BugType&) const = default;
};

// Closed set of test-failure kinds.
inline constexpr const char* kFailureKinds[] = {"assertion", "exception", "timeout", "crash"};

struct TestSpec {
    std::string name;
    std::string kind;                         // "new" | "existing"
    std::optional<std::string> payload_ref;   // dataset-relative path to the input blob

    auto operator<=>(const TestSpec&) const = default;
};

enum class Source { NVD, OSSFuzz, Injection };

std::string to_string(Source source);
std::optional<Source> source_from_string(const std::string& s);

struct BugRecord {
    std::string id; // content hash; see record_id()
    Source source = Source::NVD;
    ProjectRef project;
    std::string fix_commit;    // for Injection: synthetic revision of the clean code
    std::string parent_commit; // for Injection: synthetic revision of the noised code
    std::vector<DiffHunk> hunks;
    BugType bug_type;
    std::optional<std::vector<TestSpec>> tests;
    std::map<std::string, std::string> metadata;
    std::string created_at; // ISO-8601 or empty when unknown

    auto operator<=>(const BugRecord&) const = default;
};

// Deterministic content hash over the canonical serialization, excluding
// id and created_at. Equal logical records hash identically on every
// platform; hunk text is newline-normalized before hashing.
std::string record_id(const BugRecord& record);

// Returns one description per violated invariant (empty = valid). Never throws.
std::vector<std::string> validate(const BugRecord& record);

// Canonical JSON wire format (fixed field order).
nlohmann::ordered_json record_to_json(const BugRecord& record);
std::string record_to_jsonl(const BugRecord& record);
BugRecord record_from_json(const nlohmann::json& j);
BugRecord record_from_jsonl(const std::string& line);

} // namespace pbc
