#pragma once

#include "pbc/model.hpp"
#include "pbc/nvd.hpp"
#include "pbc/ossfuzz.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace pbc::pipeline {

// Per-cause counters for records that could not be extracted.
struct SkipCounters {
    std::map<std::string, std::size_t> by_cause;

    void bump(const std::string& cause) { ++by_cause[cause]; }
    std::size_t total() const;
    std::string to_kv() const;
};

struct TrackResult {
    std::vector<BugRecord> records;
    SkipCounters skips;
};

struct TrackNvdOptions {
    std::filesystem::path repos_dir; // <repos>/<owner>__<name> checkouts
    std::string clone_cmd;           // optional template: {url} {dest}
    std::string language = "unknown";
    std::string created_at;          // empty = fix commit date
};

// Fetch -> filter patch commits -> mine hunks; records sorted by
// (cve_id, commit).
TrackResult track_nvd(nvd::NvdSource& source, const TrackNvdOptions& options);

struct TrackOssFuzzOptions {
    std::filesystem::path repo;
    std::filesystem::path dataset_dir; // testcase blobs land under testcases/
    std::string language = "unknown";
    std::string created_at;
    ProjectRef project; // optional override; derived from the repo otherwise
};

// Scan commit messages -> resolve crash types -> mine hunks; records sorted
// by issue id.
TrackResult track_ossfuzz(ossfuzz::OssFuzzSource& source, const TrackOssFuzzOptions& options);

// host/owner/name from the checkout's origin URL when possible.
ProjectRef project_ref_for_repo(const std::filesystem::path& repo);

} // namespace pbc::pipeline
