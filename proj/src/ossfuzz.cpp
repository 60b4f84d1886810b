#include "pbc/ossfuzz.hpp"

#include "pbc/error.hpp"
#include "pbc/http.hpp"
#include "pbc/log.hpp"
#include "pbc/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>
#include <set>

using nlohmann::json;

namespace pbc::ossfuzz {

std::vector<long> extract_issue_ids(const std::string& message) {
    std::set<long> ids;

    // (a) issue-tracker URLs
    static const std::regex url_re(R"(oss-fuzz/issues/detail\?id=(\d+))");
    // (b) textual references, e.g. "OSS-Fuzz issue: 123", "oss-fuzz #123"
    static const std::regex text_re(R"(OSS-Fuzz[ -]?(?:issue[: ]*)?#?(\d+))",
                                    std::regex_constants::icase);
    // (c) credit lines with a standalone number
    static const std::regex credit_re(R"(Credit to OSS-Fuzz)", std::regex_constants::icase);
    static const std::regex number_re(R"((\d+))");

    auto scan = [&](const std::string& text, const std::regex& re) {
        for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
             it != std::sregex_iterator(); ++it) {
            try {
                ids.insert(std::stol((*it)[1].str()));
            } catch (...) {
            }
        }
    };
    scan(message, url_re);
    scan(message, text_re);
    for (const auto& line : util::Lines::split(message).lines) {
        if (std::regex_search(line, credit_re)) scan(line, number_re);
    }
    return {ids.begin(), ids.end()};
}

std::vector<std::pair<std::string, long>> scan_commit_messages(
    const std::filesystem::path& repo_path) {
    std::vector<std::pair<std::string, long>> out;
    for (const auto& commit : git::log_messages(repo_path)) {
        for (long id : extract_issue_ids(commit.message)) {
            out.emplace_back(commit.revision, id);
        }
    }
    return out;
}

FixtureOssFuzzSource::FixtureOssFuzzSource(std::filesystem::path dir) : dir_(std::move(dir)) {}

OssFuzzIssue FixtureOssFuzzSource::resolve(long issue_id) {
    auto path = dir_ / "issues" / (std::to_string(issue_id) + ".json");
    if (!std::filesystem::exists(path)) {
        throw IssueNotFound("no such issue: " + std::to_string(issue_id));
    }
    json j = json::parse(util::read_file(path), nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed issue file: " + path.string());

    OssFuzzIssue issue;
    issue.issue_id = j.value("issue_id", issue_id);
    issue.crash_type = j.value("crash_type", "");
    issue.project = j.value("project", "");
    if (j.value("testcase_denied", false)) {
        issue.testcase_denied = true;
    } else if (j.contains("testcase")) {
        auto blob_path = dir_ / "testcases" / j.at("testcase").get<std::string>();
        if (std::filesystem::exists(blob_path)) {
            issue.testcase = util::read_file(blob_path);
        }
    }
    return issue;
}

namespace {

class LiveOssFuzzSource : public OssFuzzSource {
public:
    LiveOssFuzzSource(std::string endpoint, int max_attempts)
        : endpoint_(std::move(endpoint)), max_attempts_(max_attempts) {}

    OssFuzzIssue resolve(long issue_id) override {
        std::string url = endpoint_ + "/issues/" + std::to_string(issue_id);
        int attempts = 0;
        while (true) {
            ++attempts;
            try {
                auto response = http::get(url, {}, 10);
                if (response.status == 404) {
                    throw IssueNotFound("issue " + std::to_string(issue_id) + " not found");
                }
                if (response.status == 401 || response.status == 403) {
                    throw AccessDenied("issue " + std::to_string(issue_id) + " is restricted");
                }
                if (response.status != 200) {
                    throw TransportError("status " + std::to_string(response.status));
                }
                json j = json::parse(response.body, nullptr, false);
                if (j.is_discarded()) throw ParseError("malformed issue payload");
                OssFuzzIssue issue;
                issue.issue_id = issue_id;
                issue.crash_type = j.value("crash_type", "");
                issue.project = j.value("project", "");
                return issue;
            } catch (const TransportError&) {
                if (attempts >= max_attempts_) throw;
                log::warn("ossfuzz-retry", {{"attempt", std::to_string(attempts)}});
            }
        }
    }

private:
    std::string endpoint_;
    int max_attempts_;
};

} // namespace

std::unique_ptr<OssFuzzSource> make_live_source(const std::string& endpoint, int max_attempts) {
    return std::make_unique<LiveOssFuzzSource>(endpoint, max_attempts);
}

std::string to_string(ReproResult::Verdict verdict) {
    switch (verdict) {
    case ReproResult::Verdict::Reproducible: return "reproducible";
    case ReproResult::Verdict::NotReproducible: return "not-reproducible";
    case ReproResult::Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ReproResult reproduce(const BugRecord& record, const TargetAdapter& adapter,
                      const FileMap& buggy_tree, const FileMap& fixed_tree,
                      const std::filesystem::path& dataset_dir,
                      std::chrono::milliseconds per_test_timeout) {
    ReproResult result;
    if (!record.tests || record.tests->empty()) {
        result.note = "record has no tests";
        return result;
    }

    FileMap buggy = buggy_tree;
    FileMap fixed = fixed_tree;
    for (const auto& test : *record.tests) {
        if (test.kind != "new" || !test.payload_ref) continue;
        auto blob_path = dataset_dir / *test.payload_ref;
        if (!std::filesystem::exists(blob_path)) {
            result.note = "missing testcase blob " + test.payload_ref.value();
            return result;
        }
        std::string blob = util::read_file(blob_path);
        buggy = adapter.attach_test(std::move(buggy), test, blob);
        fixed = adapter.attach_test(std::move(fixed), test, blob);
    }

    auto run_side = [&](FileMap files,
                        std::map<std::string, bool>& side) -> std::optional<std::string> {
        SnapshotPtr snap = adapter.from_files(std::move(files));
        CompileOutcome compiled = adapter.compile(*snap);
        if (!compiled.ok) {
            std::string what = "build failure";
            if (!compiled.diagnostics.empty()) what += ": " + compiled.diagnostics.front().message;
            return what;
        }
        TestRunOutcome outcome = adapter.run_tests(*snap, per_test_timeout);
        for (const auto& [name, test_result] : outcome.results) {
            side[name] = test_result.passed();
        }
        return std::nullopt;
    };

    if (auto err = run_side(std::move(buggy), result.buggy_side)) {
        result.verdict = ReproResult::Verdict::Inconclusive;
        result.note = "buggy side: " + *err;
        return result;
    }
    if (auto err = run_side(std::move(fixed), result.fixed_side)) {
        result.verdict = ReproResult::Verdict::Inconclusive;
        result.note = "fixed side: " + *err;
        return result;
    }

    bool fixed_all_pass = !result.fixed_side.empty();
    for (const auto& [name, passed] : result.fixed_side) {
        if (!passed) fixed_all_pass = false;
    }
    bool buggy_any_fail = false;
    for (const auto& [name, passed] : result.buggy_side) {
        if (!passed) buggy_any_fail = true;
    }
    result.verdict = fixed_all_pass && buggy_any_fail ? ReproResult::Verdict::Reproducible
                                                      : ReproResult::Verdict::NotReproducible;
    return result;
}

} // namespace pbc::ossfuzz
