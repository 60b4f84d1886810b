#pragma once

#include "pbc/model.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pbc::dataset {

enum class AppendResult { Appended, Duplicate };

// One-record-per-line JSONL store with id-based dedup. Single writer per
// file; records are validated before they are written.
class DatasetWriter {
public:
    explicit DatasetWriter(std::filesystem::path path);

    // Throws InvalidRecord (violations attached) or IoError.
    AppendResult append(const BugRecord& record);

    std::size_t appended() const { return appended_; }
    std::size_t duplicates() const { return duplicates_; }

private:
    std::filesystem::path path_;
    std::set<std::string> ids_;
    std::size_t appended_ = 0;
    std::size_t duplicates_ = 0;
};

// Throws ParseError naming the file and line on corrupt input.
std::vector<BugRecord> read_records(const std::filesystem::path& path);
std::vector<BugRecord> read_record_files(const std::vector<std::filesystem::path>& paths);

// "17.1%" for 1455/8487: one decimal, round half up.
std::string render_percent(std::uint64_t numerator, std::uint64_t denominator);

struct DatasetStats {
    std::map<Source, std::uint64_t> totals;
    std::map<Source, std::uint64_t> projects_per_source;
    std::uint64_t project_count = 0; // distinct across all sources
    // language -> source -> count
    std::map<std::string, std::map<Source, std::uint64_t>> by_language;
    // source -> bug type display key -> count
    std::map<Source, std::map<std::string, std::uint64_t>> by_type;
    // year (or "unknown") -> source -> count
    std::map<std::string, std::map<Source, std::uint64_t>> by_year;

    std::uint64_t total() const;
};

DatasetStats compute_stats(const std::vector<BugRecord>& records);

// Fix year, preferring metadata.fix_date, falling back to created_at.
std::string record_year(const BugRecord& record);

void print_stats(std::ostream& out, const DatasetStats& stats, int top_k = 10);

struct YearRow {
    std::string label; // "2023", "<= 2015", "unknown"
    std::map<Source, std::uint64_t> counts;
    std::uint64_t total = 0;
};

struct YearReport {
    std::vector<YearRow> rows; // years descending, then the floor bucket, then unknown
    int cutoff_year = 0;
    std::uint64_t at_or_after_cutoff = 0;
};

YearReport year_report(const std::vector<BugRecord>& records, int cutoff_year,
                       int floor_year = 2015);

void print_year_report(std::ostream& out, const YearReport& report);

// Validated, id-sorted JSONL copy.
void export_jsonl(const std::vector<BugRecord>& records, std::ostream& out);

// Flattened stats tables: table,source,key,count,share
void export_csv_summary(const DatasetStats& stats, std::ostream& out);

} // namespace pbc::dataset
