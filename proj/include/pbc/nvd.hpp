#pragma once

#include "pbc/gitminer.hpp"
#include "pbc/model.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pbc::nvd {

struct NvdReference {
    std::string url;
    std::vector<std::string> tags;
};

struct NvdEntry {
    std::string cve_id;
    std::string description;
    std::vector<std::string> cwe_ids;
    std::string severity;
    std::string published_date;
    std::vector<NvdReference> references;
};

// Paged vulnerability feed; cursor "" starts, empty next-cursor ends.
class NvdSource {
public:
    virtual ~NvdSource() = default;
    virtual std::pair<std::vector<NvdEntry>, std::string> fetch(const std::string& cursor) = 0;
};

// Replays recorded response payloads, one file per page, in lexicographic
// order.
class FixtureNvdSource : public NvdSource {
public:
    explicit FixtureNvdSource(const std::filesystem::path& dir);
    std::pair<std::vector<NvdEntry>, std::string> fetch(const std::string& cursor) override;

private:
    std::vector<std::filesystem::path> pages_;
};

struct LiveOptions {
    std::string endpoint = "https://services.nvd.nist.gov/rest/json/cves/2.0";
    std::string api_key;       // empty = anonymous rate limit
    int page_size = 2000;
    int max_attempts = 3;
};

std::unique_ptr<NvdSource> make_live_source(const LiveOptions& options);

// Parses one recorded/live API payload into entries.
std::vector<NvdEntry> parse_page(const std::string& payload);

std::pair<std::vector<NvdEntry>, std::string> fetch_entries(NvdSource& source,
                                                            const std::string& cursor);

// Keeps exactly the GitHub commit references tagged "Patch"; one pair per
// qualifying reference.
std::vector<std::pair<NvdEntry, std::string>> filter_patch_commits(
    const std::vector<NvdEntry>& entries);

struct CommitUrl {
    ProjectRef project; // host/owner/name from the URL
    std::string revision;
};

std::optional<CommitUrl> parse_commit_url(const std::string& url);

// Builds one NVD record from an entry and a qualifying commit reference,
// mining hunks from the local clone.
BugRecord build_cve_record(const NvdEntry& entry, const std::string& commit_url,
                           const std::filesystem::path& repo_path, const std::string& language,
                           const std::string& created_at = "");

} // namespace pbc::nvd
