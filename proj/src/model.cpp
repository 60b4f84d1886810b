#include "pbc/model.hpp"

#include "pbc/error.hpp"
#include "pbc/sha.hpp"
#include "pbc/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>

using nlohmann::json;
using nlohmann::ordered_json;

namespace pbc {
namespace {

const char* bug_type_kind_str(BugType::Kind kind) {
    switch (kind) {
    case BugType::Kind::CweId: return "cwe";
    case BugType::Kind::CrashType: return "crash";
    case BugType::Kind::CompileDiagnostic: return "compile";
    case BugType::Kind::TestFailure: return "test";
    }
    return "cwe";
}

std::optional<BugType::Kind> bug_type_kind_from(const std::string& s) {
    if (s == "cwe") return BugType::Kind::CweId;
    if (s == "crash") return BugType::Kind::CrashType;
    if (s == "compile") return BugType::Kind::CompileDiagnostic;
    if (s == "test") return BugType::Kind::TestFailure;
    return std::nullopt;
}

ordered_json span_to_json(const LineSpan& span) {
    if (!span) return nullptr;
    return ordered_json::array({span->first, span->second});
}

LineSpan span_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw ParseError("span must be [start,end] or null");
    }
    return std::make_pair(j[0].get<int>(), j[1].get<int>());
}

bool valid_failure_kind(const std::string& kind) {
    for (const char* k : kFailureKinds) {
        if (kind == k) return true;
    }
    return false;
}

// Accepts CWE-<digits> plus the CWE-unknown sentinel used when the source
// entry carries no weakness id.
bool valid_cwe_id(const std::string& id) {
    static const std::regex re(R"(CWE-(\d+|unknown))");
    return std::regex_match(id, re);
}

std::size_t span_len(const LineSpan& span) {
    if (!span) return 0;
    return static_cast<std::size_t>(span->second - span->first + 1);
}

} // namespace

BugType BugType::cwe(std::string id) {
    return BugType{Kind::CweId, std::move(id), ""};
}

BugType BugType::crash(std::string name) {
    return BugType{Kind::CrashType, std::move(name), ""};
}

BugType BugType::compile(std::string code, std::string message) {
    return BugType{Kind::CompileDiagnostic, std::move(code), std::move(message)};
}

BugType BugType::test_failure(std::string failure_kind, std::string message) {
    return BugType{Kind::TestFailure, std::move(failure_kind), std::move(message)};
}

std::string BugType::display_key() const {
    switch (kind) {
    case Kind::CweId:
    case Kind::CrashType:
    case Kind::CompileDiagnostic:
        return value;
    case Kind::TestFailure:
        // Runtime faults are distinguished by fault name; assertion and
        // timeout failures by their kind.
        if (value == "exception" && !message.empty()) return message;
        if (value == "assertion") return "assertion failure";
        return value;
    }
    return value;
}

std::string to_string(Source source) {
    switch (source) {
    case Source::NVD: return "NVD";
    case Source::OSSFuzz: return "OSSFuzz";
    case Source::Injection: return "Injection";
    }
    return "NVD";
}

std::optional<Source> source_from_string(const std::string& s) {
    if (s == "NVD") return Source::NVD;
    if (s == "OSSFuzz") return Source::OSSFuzz;
    if (s == "Injection") return Source::Injection;
    return std::nullopt;
}

ordered_json record_to_json(const BugRecord& record) {
    ordered_json j;
    j["id"] = record.id;
    j["source"] = to_string(record.source);
    j["project"] = {
        {"host", record.project.host},
        {"owner", record.project.owner},
        {"name", record.project.name},
        {"language", record.project.language},
    };
    j["fix_commit"] = record.fix_commit;
    j["parent_commit"] = record.parent_commit;
    ordered_json hunks = ordered_json::array();
    for (const auto& hunk : record.hunks) {
        ordered_json h;
        h["file"] = hunk.location.file_path;
        h["before_span"] = span_to_json(hunk.location.before_span);
        h["after_span"] = span_to_json(hunk.location.after_span);
        h["before_text"] = hunk.before_text;
        h["after_text"] = hunk.after_text;
        hunks.push_back(std::move(h));
    }
    j["hunks"] = std::move(hunks);
    ordered_json bt;
    bt["kind"] = bug_type_kind_str(record.bug_type.kind);
    bt["value"] = record.bug_type.value;
    if (record.bug_type.kind == BugType::Kind::CompileDiagnostic ||
        record.bug_type.kind == BugType::Kind::TestFailure) {
        bt["message"] = record.bug_type.message;
    }
    j["bug_type"] = std::move(bt);
    if (record.tests) {
        ordered_json tests = ordered_json::array();
        for (const auto& t : *record.tests) {
            ordered_json tj;
            tj["name"] = t.name;
            tj["kind"] = t.kind;
            if (t.payload_ref) tj["payload_ref"] = *t.payload_ref;
            tests.push_back(std::move(tj));
        }
        j["tests"] = std::move(tests);
    }
    j["metadata"] = record.metadata;
    j["created_at"] = record.created_at;
    return j;
}

std::string record_to_jsonl(const BugRecord& record) {
    return record_to_json(record).dump();
}

BugRecord record_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("record must be a JSON object");
    BugRecord r;
    try {
        r.id = j.at("id").get<std::string>();
        auto source = source_from_string(j.at("source").get<std::string>());
        if (!source) throw ParseError("unknown source: " + j.at("source").get<std::string>());
        r.source = *source;
        const auto& p = j.at("project");
        r.project.host = p.at("host").get<std::string>();
        r.project.owner = p.at("owner").get<std::string>();
        r.project.name = p.at("name").get<std::string>();
        r.project.language = p.at("language").get<std::string>();
        r.fix_commit = j.at("fix_commit").get<std::string>();
        r.parent_commit = j.at("parent_commit").get<std::string>();
        for (const auto& h : j.at("hunks")) {
            DiffHunk hunk;
            hunk.location.file_path = h.at("file").get<std::string>();
            hunk.location.before_span = span_from_json(h.at("before_span"));
            hunk.location.after_span = span_from_json(h.at("after_span"));
            hunk.before_text = h.at("before_text").get<std::string>();
            hunk.after_text = h.at("after_text").get<std::string>();
            r.hunks.push_back(std::move(hunk));
        }
        const auto& bt = j.at("bug_type");
        auto kind = bug_type_kind_from(bt.at("kind").get<std::string>());
        if (!kind) throw ParseError("unknown bug_type.kind");
        r.bug_type.kind = *kind;
        r.bug_type.value = bt.at("value").get<std::string>();
        r.bug_type.message = bt.value("message", "");
        if (j.contains("tests")) {
            std::vector<TestSpec> tests;
            for (const auto& t : j.at("tests")) {
                TestSpec spec;
                spec.name = t.at("name").get<std::string>();
                spec.kind = t.at("kind").get<std::string>();
                if (t.contains("payload_ref")) spec.payload_ref = t.at("payload_ref").get<std::string>();
                tests.push_back(std::move(spec));
            }
            r.tests = std::move(tests);
        }
        if (j.contains("metadata")) {
            for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it) {
                r.metadata[it.key()] = it.value().get<std::string>();
            }
        }
        r.created_at = j.value("created_at", "");
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
    return r;
}

BugRecord record_from_jsonl(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return record_from_json(j);
}

std::string record_id(const BugRecord& record) {
    BugRecord canon = record;
    canon.id.clear();
    canon.created_at.clear();
    for (auto& hunk : canon.hunks) {
        hunk.before_text = util::normalize_newlines(hunk.before_text);
        hunk.after_text = util::normalize_newlines(hunk.after_text);
    }
    ordered_json j = record_to_json(canon);
    j.erase("id");
    j.erase("created_at");
    return sha256_hex(j.dump());
}

std::vector<std::string> validate(const BugRecord& record) {
    std::vector<std::string> violations;
    auto add = [&](const std::string& field, const std::string& rule) {
        violations.push_back(field + ": " + rule);
    };

    if (record.project.owner.empty()) add("project.owner", "must be non-empty");
    if (record.project.name.empty()) add("project.name", "must be non-empty");
    if (!util::valid_hostname(record.project.host)) add("project.host", "must be a valid hostname");

    if (record.hunks.empty()) add("hunks", "must be non-empty");
    for (std::size_t i = 0; i < record.hunks.size(); ++i) {
        const auto& hunk = record.hunks[i];
        const auto field = "hunks[" + std::to_string(i) + "]";
        const auto& loc = hunk.location;
        if (loc.file_path.empty()) add(field + ".file", "must be non-empty");
        for (const auto& [span, which] :
             {std::make_pair(loc.before_span, "before_span"), std::make_pair(loc.after_span, "after_span")}) {
            if (span && (span->first < 1 || span->second < span->first)) {
                add(field + "." + which, "span must satisfy 1 <= start <= end");
            }
        }
        if (!loc.before_span && !loc.after_span) {
            add(field, "at least one of before_span/after_span must be non-empty");
        }
        if (util::line_count(hunk.before_text) != span_len(loc.before_span)) {
            add(field + ".before_text", "line count must match before_span length");
        }
        if (util::line_count(hunk.after_text) != span_len(loc.after_span)) {
            add(field + ".after_text", "line count must match after_span length");
        }
    }

    switch (record.bug_type.kind) {
    case BugType::Kind::CweId:
        if (!valid_cwe_id(record.bug_type.value)) {
            add("bug_type.value", "must match CWE-<digits>");
        }
        break;
    case BugType::Kind::TestFailure:
        if (!valid_failure_kind(record.bug_type.value)) {
            add("bug_type.value", "failure kind must be one of assertion/exception/timeout/crash");
        }
        break;
    case BugType::Kind::CrashType:
        if (record.bug_type.value.empty()) add("bug_type.value", "crash type must be non-empty");
        break;
    case BugType::Kind::CompileDiagnostic:
        if (record.bug_type.value.empty()) add("bug_type.value", "diagnostic code must be non-empty");
        break;
    }

    if (record.tests) {
        for (std::size_t i = 0; i < record.tests->size(); ++i) {
            const auto& t = (*record.tests)[i];
            const auto field = "tests[" + std::to_string(i) + "]";
            if (t.kind != "new" && t.kind != "existing") {
                add(field + ".kind", "must be new or existing");
            }
            if (t.kind == "new" && record.source != Source::OSSFuzz) {
                add(field + ".kind", "kind=new is only valid for OSSFuzz records");
            }
            if (t.kind == "existing" && record.source != Source::Injection) {
                add(field + ".kind", "kind=existing is only valid for Injection records");
            }
            if (t.name.empty()) add(field + ".name", "must be non-empty");
        }
    }

    switch (record.source) {
    case Source::NVD:
        if (!record.metadata.count("cve_id")) add("metadata.cve_id", "required for NVD records");
        if (!record.metadata.count("cwe_id")) add("metadata.cwe_id", "required for NVD records");
        if (record.tests) add("tests", "must be absent for NVD records");
        break;
    case Source::OSSFuzz:
        if (!record.metadata.count("ossfuzz_issue_id")) {
            add("metadata.ossfuzz_issue_id", "required for OSSFuzz records");
        }
        if (record.bug_type.kind != BugType::Kind::CrashType) {
            add("bug_type", "OSSFuzz records must carry a crash type");
        }
        break;
    case Source::Injection: {
        auto it = record.metadata.find("rule_id");
        bool rule_ok = false;
        if (it != record.metadata.end()) {
            try {
                int id = std::stoi(it->second);
                rule_ok = id >= 1 && id <= 16;
            } catch (...) {
            }
        }
        if (!rule_ok) add("metadata.rule_id", "required for Injection records, in 1..16");
        if (record.bug_type.kind != BugType::Kind::CompileDiagnostic &&
            record.bug_type.kind != BugType::Kind::TestFailure) {
            add("bug_type", "Injection records must carry a compile diagnostic or test failure");
        }
        bool has_tests = record.tests && !record.tests->empty();
        bool is_behavior = record.bug_type.kind == BugType::Kind::TestFailure;
        if (is_behavior && !has_tests) {
            add("tests", "behavior bugs must list their failing tests");
        }
        if (!is_behavior && has_tests) {
            add("tests", "only behavior bugs carry tests");
        }
        break;
    }
    }
    return violations;
}

} // namespace pbc
