#include "pbc/nvd.hpp"

#include "pbc/error.hpp"
#include "pbc/log.hpp"
#include "pbc/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>

using nlohmann::json;

namespace pbc::nvd {

FixtureNvdSource::FixtureNvdSource(const std::filesystem::path& dir) {
    if (std::filesystem::is_directory(dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.is_regular_file()) pages_.push_back(entry.path());
        }
        std::sort(pages_.begin(), pages_.end());
    }
}

std::pair<std::vector<NvdEntry>, std::string> FixtureNvdSource::fetch(const std::string& cursor) {
    std::size_t index = cursor.empty() ? 0 : std::stoull(cursor);
    if (index >= pages_.size()) return {{}, ""};
    std::vector<NvdEntry> entries;
    try {
        entries = parse_page(util::read_file(pages_[index]));
    } catch (const ParseError& e) {
        log::warn("nvd-page-skipped", {{"page", pages_[index].string()}, {"error", e.what()}});
    }
    std::string next = index + 1 < pages_.size() ? std::to_string(index + 1) : "";
    return {std::move(entries), next};
}

std::vector<NvdEntry> parse_page(const std::string& payload) {
    json page = json::parse(payload, nullptr, false);
    if (page.is_discarded() || !page.is_object()) {
        throw ParseError("malformed vulnerability page");
    }
    std::vector<NvdEntry> entries;
    for (const auto& vuln : page.value("vulnerabilities", json::array())) {
        if (!vuln.contains("cve")) continue;
        const auto& cve = vuln.at("cve");
        NvdEntry entry;
        entry.cve_id = cve.value("id", "");
        if (entry.cve_id.empty()) continue;
        entry.published_date = cve.value("published", "");

        for (const auto& desc : cve.value("descriptions", json::array())) {
            if (desc.value("lang", "") == "en") {
                entry.description = desc.value("value", "");
                break;
            }
        }
        static const std::regex cwe_re(R"(CWE-\d+)");
        for (const auto& weakness : cve.value("weaknesses", json::array())) {
            for (const auto& desc : weakness.value("description", json::array())) {
                std::string value = desc.value("value", "");
                if (std::regex_match(value, cwe_re) &&
                    std::find(entry.cwe_ids.begin(), entry.cwe_ids.end(), value) ==
                        entry.cwe_ids.end()) {
                    entry.cwe_ids.push_back(value);
                }
            }
        }
        const auto& metrics = cve.value("metrics", json::object());
        for (const char* key : {"cvssMetricV31", "cvssMetricV30", "cvssMetricV2"}) {
            const auto& list = metrics.value(key, json::array());
            if (!list.empty()) {
                const auto& m = list.front();
                if (m.contains("cvssData") && m.at("cvssData").contains("baseSeverity")) {
                    entry.severity = m.at("cvssData").value("baseSeverity", "");
                } else {
                    entry.severity = m.value("baseSeverity", "");
                }
                if (!entry.severity.empty()) break;
            }
        }
        for (const auto& ref : cve.value("references", json::array())) {
            NvdReference reference;
            reference.url = ref.value("url", "");
            for (const auto& tag : ref.value("tags", json::array())) {
                reference.tags.push_back(tag.get<std::string>());
            }
            entry.references.push_back(std::move(reference));
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::pair<std::vector<NvdEntry>, std::string> fetch_entries(NvdSource& source,
                                                            const std::string& cursor) {
    return source.fetch(cursor);
}

std::optional<CommitUrl> parse_commit_url(const std::string& url) {
    static const std::regex re(R"(https://github\.com/([^/]+)/([^/]+)/commit/([0-9a-fA-F]{7,40}))");
    std::smatch m;
    if (!std::regex_match(url, m, re)) return std::nullopt;
    CommitUrl out;
    out.project.host = "github.com";
    out.project.owner = m[1].str();
    out.project.name = m[2].str();
    out.revision = m[3].str();
    return out;
}

std::vector<std::pair<NvdEntry, std::string>> filter_patch_commits(
    const std::vector<NvdEntry>& entries) {
    std::vector<std::pair<NvdEntry, std::string>> out;
    for (const auto& entry : entries) {
        for (const auto& ref : entry.references) {
            if (!parse_commit_url(ref.url)) continue;
            // Tag match is case-sensitive by design.
            if (std::find(ref.tags.begin(), ref.tags.end(), "Patch") == ref.tags.end()) continue;
            out.emplace_back(entry, ref.url);
        }
    }
    return out;
}

BugRecord build_cve_record(const NvdEntry& entry, const std::string& commit_url,
                           const std::filesystem::path& repo_path, const std::string& language,
                           const std::string& created_at) {
    auto parsed = parse_commit_url(commit_url);
    if (!parsed) throw ParseError("not a GitHub commit URL: " + commit_url);

    auto pair = git::resolve_commit(repo_path, parsed->revision);
    auto hunks = git::diff_hunks(pair);
    if (hunks.empty()) {
        throw ParseError("commit " + parsed->revision + " has no text hunks");
    }

    BugRecord record;
    record.source = Source::NVD;
    record.project = parsed->project;
    record.project.language = language;
    record.fix_commit = pair.fix_revision;
    record.parent_commit = pair.parent_revision;
    record.hunks = std::move(hunks);
    record.bug_type =
        BugType::cwe(entry.cwe_ids.empty() ? "CWE-unknown" : entry.cwe_ids.front());
    record.metadata["cve_id"] = entry.cve_id;
    record.metadata["cwe_id"] = entry.cwe_ids.empty() ? "CWE-unknown" : entry.cwe_ids.front();
    if (!entry.cwe_ids.empty()) {
        std::string all;
        for (const auto& id : entry.cwe_ids) {
            if (!all.empty()) all += ",";
            all += id;
        }
        record.metadata["cwe_ids"] = all;
    }
    if (!entry.severity.empty()) record.metadata["severity"] = entry.severity;
    if (!entry.published_date.empty()) record.metadata["discovery_date"] = entry.published_date;
    std::string fix_date = git::commit_date(repo_path, pair.fix_revision);
    if (!fix_date.empty()) record.metadata["fix_date"] = fix_date;
    record.created_at = created_at.empty() ? fix_date : created_at;
    record.id = record_id(record);
    return record;
}

} // namespace pbc::nvd
