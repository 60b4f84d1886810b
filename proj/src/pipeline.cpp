#include "pbc/pipeline.hpp"

#include "pbc/error.hpp"
#include "pbc/log.hpp"
#include "pbc/process.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace pbc::pipeline {

std::size_t SkipCounters::total() const {
    std::size_t sum = 0;
    for (const auto& [cause, count] : by_cause) sum += count;
    return sum;
}

std::string SkipCounters::to_kv() const {
    std::ostringstream out;
    for (const auto& [cause, count] : by_cause) {
        out << "skipped." << cause << "=" << count << "\n";
    }
    return out.str();
}

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
    return text;
}

std::filesystem::path resolve_repo(const nvd::CommitUrl& commit, const TrackNvdOptions& options,
                                   SkipCounters& skips) {
    auto dir = options.repos_dir / (commit.project.owner + "__" + commit.project.name);
    if (std::filesystem::is_directory(dir)) return dir;
    if (options.clone_cmd.empty()) {
        skips.bump("repo-missing");
        return {};
    }
    std::string url =
        "https://" + commit.project.host + "/" + commit.project.owner + "/" + commit.project.name;
    std::string cmd = replace_all(options.clone_cmd, "{url}", url);
    cmd = replace_all(cmd, "{dest}", dir.string());
    log::info("cloning", {{"url", url}, {"dest", dir.string()}});
    auto result = run_shell(cmd, {});
    if (!result.ok() || !std::filesystem::is_directory(dir)) {
        log::warn("clone-failed", {{"url", url}, {"stderr", util::trim(result.err)}});
        skips.bump("clone-failed");
        return {};
    }
    return dir;
}

} // namespace

TrackResult track_nvd(nvd::NvdSource& source, const TrackNvdOptions& options) {
    TrackResult result;
    std::string cursor;
    std::size_t pages = 0;
    while (true) {
        auto [entries, next] = nvd::fetch_entries(source, cursor);
        ++pages;
        for (const auto& [entry, url] : nvd::filter_patch_commits(entries)) {
            auto commit = nvd::parse_commit_url(url);
            auto repo = resolve_repo(*commit, options, result.skips);
            if (repo.empty()) continue;
            try {
                result.records.push_back(nvd::build_cve_record(entry, url, repo, options.language,
                                                               options.created_at));
            } catch (const RevisionNotFound&) {
                result.skips.bump("revision-not-found");
            } catch (const RootCommit&) {
                result.skips.bump("root-commit");
            } catch (const MergeCommit&) {
                result.skips.bump("merge-commit");
            } catch (const ParseError& e) {
                log::warn("cve-skipped", {{"cve", entry.cve_id}, {"error", e.what()}});
                result.skips.bump("no-hunks");
            }
        }
        if (next.empty()) break;
        cursor = next;
    }
    log::info("nvd-tracked", {{"pages", std::to_string(pages)},
                              {"records", std::to_string(result.records.size())},
                              {"skipped", std::to_string(result.skips.total())}});
    std::sort(result.records.begin(), result.records.end(),
              [](const BugRecord& a, const BugRecord& b) {
                  auto ka = std::make_pair(a.metadata.at("cve_id"), a.fix_commit);
                  auto kb = std::make_pair(b.metadata.at("cve_id"), b.fix_commit);
                  return ka < kb;
              });
    return result;
}

ProjectRef project_ref_for_repo(const std::filesystem::path& repo) {
    ProjectRef ref;
    ref.host = "local";
    ref.owner = "local";
    ref.name = repo.filename().string();
    if (ref.name.empty()) ref.name = "repo";

    auto origin = run_process({"git", "-C", repo.string(), "config", "--get", "remote.origin.url"});
    if (origin.ok()) {
        static const std::regex re(R"((?:https://|git@)([^/:]+)[:/]([^/]+)/(.+?)(?:\.git)?\s*$)");
        std::smatch m;
        std::string url = util::trim(origin.out);
        if (std::regex_match(url, m, re)) {
            ref.host = m[1].str();
            ref.owner = m[2].str();
            ref.name = m[3].str();
        }
    }
    return ref;
}

TrackResult track_ossfuzz(ossfuzz::OssFuzzSource& source, const TrackOssFuzzOptions& options) {
    TrackResult result;
    ProjectRef base_project =
        options.project.owner.empty() ? project_ref_for_repo(options.repo) : options.project;

    auto mentions = ossfuzz::scan_commit_messages(options.repo);
    for (const auto& [revision, issue_id] : mentions) {
        ossfuzz::OssFuzzIssue issue;
        try {
            issue = source.resolve(issue_id);
        } catch (const IssueNotFound&) {
            result.skips.bump("issue-not-found");
            continue;
        } catch (const AccessDenied&) {
            result.skips.bump("access-denied");
            continue;
        }

        git::CommitPair pair;
        try {
            pair = git::resolve_commit(options.repo, revision);
        } catch (const RootCommit&) {
            result.skips.bump("root-commit");
            continue;
        } catch (const MergeCommit&) {
            result.skips.bump("merge-commit");
            continue;
        }
        auto hunks = git::diff_hunks(pair);
        if (hunks.empty()) {
            result.skips.bump("no-hunks");
            continue;
        }

        BugRecord record;
        record.source = Source::OSSFuzz;
        record.project = base_project;
        record.project.language = options.language;
        record.fix_commit = pair.fix_revision;
        record.parent_commit = pair.parent_revision;
        record.hunks = std::move(hunks);
        record.bug_type = BugType::crash(issue.crash_type);
        record.metadata["ossfuzz_issue_id"] = std::to_string(issue.issue_id);
        if (!issue.project.empty()) record.metadata["ossfuzz_project"] = issue.project;
        std::string fix_date = git::commit_date(options.repo, pair.fix_revision);
        if (!fix_date.empty()) record.metadata["fix_date"] = fix_date;
        if (issue.testcase_denied) record.metadata["testcase_access"] = "denied";

        if (issue.testcase) {
            std::string ref = "testcases/" + std::to_string(issue.issue_id);
            util::write_file(options.dataset_dir / ref, *issue.testcase);
            TestSpec spec;
            spec.name = "test_ossfuzz_" + std::to_string(issue.issue_id);
            spec.kind = "new";
            spec.payload_ref = ref;
            record.tests = std::vector<TestSpec>{std::move(spec)};
        }
        record.created_at = options.created_at.empty() ? fix_date : options.created_at;
        record.id = record_id(record);
        result.records.push_back(std::move(record));
    }

    std::sort(result.records.begin(), result.records.end(),
              [](const BugRecord& a, const BugRecord& b) {
                  long ia = std::stol(a.metadata.at("ossfuzz_issue_id"));
                  long ib = std::stol(b.metadata.at("ossfuzz_issue_id"));
                  if (ia != ib) return ia < ib;
                  return a.fix_commit < b.fix_commit;
              });
    log::info("ossfuzz-tracked", {{"records", std::to_string(result.records.size())},
                                  {"skipped", std::to_string(result.skips.total())}});
    return result;
}

} // namespace pbc::pipeline
