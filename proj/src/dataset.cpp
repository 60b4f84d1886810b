#include "pbc/dataset.hpp"

#include "pbc/error.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace pbc::dataset {

DatasetWriter::DatasetWriter(std::filesystem::path path) : path_(std::move(path)) {
    if (std::filesystem::exists(path_)) {
        for (const auto& record : read_records(path_)) ids_.insert(record.id);
    } else if (path_.has_parent_path()) {
        std::filesystem::create_directories(path_.parent_path());
    }
}

AppendResult DatasetWriter::append(const BugRecord& record) {
    auto violations = validate(record);
    if (!violations.empty()) {
        throw InvalidRecord("record " + record.id + " is invalid", violations);
    }
    if (ids_.count(record.id)) {
        ++duplicates_;
        return AppendResult::Duplicate;
    }
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open " + path_.string());
    out << record_to_jsonl(record) << "\n";
    if (!out) throw IoError("short write to " + path_.string());
    ids_.insert(record.id);
    ++appended_;
    return AppendResult::Appended;
}

std::vector<BugRecord> read_records(const std::filesystem::path& path) {
    std::string content = util::read_file(path);
    std::vector<BugRecord> records;
    auto lines = util::Lines::split(content).lines;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (util::trim(lines[i]).empty()) continue;
        try {
            records.push_back(record_from_jsonl(lines[i]));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return records;
}

std::vector<BugRecord> read_record_files(const std::vector<std::filesystem::path>& paths) {
    std::vector<BugRecord> records;
    for (const auto& path : paths) {
        auto chunk = read_records(path);
        records.insert(records.end(), chunk.begin(), chunk.end());
    }
    return records;
}

std::string render_percent(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0) return "0.0%";
    // round-half-up(1000 * n / d) / 10, in integer arithmetic
    std::uint64_t tenths = (2000 * numerator + denominator) / (2 * denominator);
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

std::string record_year(const BugRecord& record) {
    auto it = record.metadata.find("fix_date");
    if (it != record.metadata.end()) {
        if (auto year = util::iso_year(it->second)) return std::to_string(*year);
    }
    if (auto year = util::iso_year(record.created_at)) return std::to_string(*year);
    return "unknown";
}

std::uint64_t DatasetStats::total() const {
    std::uint64_t sum = 0;
    for (const auto& [source, count] : totals) sum += count;
    return sum;
}

DatasetStats compute_stats(const std::vector<BugRecord>& records) {
    DatasetStats stats;
    std::map<Source, std::set<ProjectRef>> projects;
    std::set<ProjectRef> all_projects;
    for (const auto& record : records) {
        ++stats.totals[record.source];
        ProjectRef key = record.project;
        key.language.clear(); // identity is host/owner/name
        projects[record.source].insert(key);
        all_projects.insert(key);
        ++stats.by_language[record.project.language][record.source];
        ++stats.by_type[record.source][record.bug_type.display_key()];
        ++stats.by_year[record_year(record)][record.source];
    }
    for (const auto& [source, set] : projects) {
        stats.projects_per_source[source] = set.size();
    }
    stats.project_count = all_projects.size();
    return stats;
}

namespace {

const Source kSources[] = {Source::NVD, Source::OSSFuzz, Source::Injection};

std::uint64_t get_count(const std::map<Source, std::uint64_t>& m, Source s) {
    auto it = m.find(s);
    return it == m.end() ? 0 : it->second;
}

// Highest counts first, ties by key, limited to top_k (0 = all).
std::vector<std::pair<std::string, std::uint64_t>> ranked(
    const std::map<std::string, std::uint64_t>& counts, int top_k) {
    std::vector<std::pair<std::string, std::uint64_t>> rows(counts.begin(), counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (top_k > 0 && rows.size() > static_cast<std::size_t>(top_k)) {
        rows.resize(static_cast<std::size_t>(top_k));
    }
    return rows;
}

} // namespace

void print_stats(std::ostream& out, const DatasetStats& stats, int top_k) {
    out << "== Totals ==\n";
    out << std::left << std::setw(12) << "source" << std::right << std::setw(10) << "records"
        << std::setw(10) << "projects" << "\n";
    for (Source s : kSources) {
        out << std::left << std::setw(12) << to_string(s) << std::right << std::setw(10)
            << get_count(stats.totals, s) << std::setw(10)
            << get_count(stats.projects_per_source, s) << "\n";
    }
    out << std::left << std::setw(12) << "all" << std::right << std::setw(10) << stats.total()
        << std::setw(10) << stats.project_count << "\n";

    out << "\n== Languages ==\n";
    out << std::left << std::setw(12) << "language" << std::right << std::setw(10) << "NVD"
        << std::setw(10) << "OSSFuzz" << std::setw(11) << "Injection" << std::setw(10) << "total"
        << "\n";
    for (const auto& [language, counts] : stats.by_language) {
        std::uint64_t total = 0;
        for (const auto& [s, n] : counts) total += n;
        out << std::left << std::setw(12) << (language.empty() ? "(none)" : language) << std::right
            << std::setw(10) << get_count(counts, Source::NVD) << std::setw(10)
            << get_count(counts, Source::OSSFuzz) << std::setw(11)
            << get_count(counts, Source::Injection) << std::setw(10) << total << "\n";
    }

    for (Source s : kSources) {
        auto it = stats.by_type.find(s);
        if (it == stats.by_type.end() || it->second.empty()) continue;
        std::uint64_t denom = get_count(stats.totals, s);
        out << "\n== Bug types: " << to_string(s) << " (top " << top_k << ") ==\n";
        int rank = 0;
        for (const auto& [key, count] : ranked(it->second, top_k)) {
            out << std::left << std::setw(6) << ++rank << std::setw(44) << key << std::right
                << std::setw(8) << count << std::setw(8) << render_percent(count, denom) << "\n";
        }
    }
}

YearReport year_report(const std::vector<BugRecord>& records, int cutoff_year, int floor_year) {
    YearReport report;
    report.cutoff_year = cutoff_year;

    std::map<int, std::map<Source, std::uint64_t>> by_year;
    std::map<Source, std::uint64_t> floor_bucket;
    std::map<Source, std::uint64_t> unknown_bucket;

    for (const auto& record : records) {
        std::string year_str = record_year(record);
        if (year_str == "unknown") {
            ++unknown_bucket[record.source];
            continue;
        }
        int year = std::stoi(year_str);
        if (year >= cutoff_year) ++report.at_or_after_cutoff;
        if (year <= floor_year) {
            ++floor_bucket[record.source];
        } else {
            ++by_year[year][record.source];
        }
    }

    for (auto it = by_year.rbegin(); it != by_year.rend(); ++it) {
        YearRow row;
        row.label = std::to_string(it->first);
        row.counts = it->second;
        for (const auto& [s, n] : row.counts) row.total += n;
        report.rows.push_back(std::move(row));
    }
    if (!floor_bucket.empty()) {
        YearRow row;
        row.label = "<= " + std::to_string(floor_year);
        row.counts = floor_bucket;
        for (const auto& [s, n] : row.counts) row.total += n;
        report.rows.push_back(std::move(row));
    }
    if (!unknown_bucket.empty()) {
        YearRow row;
        row.label = "unknown";
        row.counts = unknown_bucket;
        for (const auto& [s, n] : row.counts) row.total += n;
        report.rows.push_back(std::move(row));
    }
    return report;
}

void print_year_report(std::ostream& out, const YearReport& report) {
    out << std::left << std::setw(10) << "year" << std::right << std::setw(10) << "NVD"
        << std::setw(10) << "OSSFuzz" << std::setw(11) << "Injection" << std::setw(10) << "total"
        << "\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(10) << row.label << std::right << std::setw(10)
            << get_count(row.counts, Source::NVD) << std::setw(10)
            << get_count(row.counts, Source::OSSFuzz) << std::setw(11)
            << get_count(row.counts, Source::Injection) << std::setw(10) << row.total << "\n";
    }
    out << "records dated " << report.cutoff_year << " or later: " << report.at_or_after_cutoff
        << "\n";
}

void export_jsonl(const std::vector<BugRecord>& records, std::ostream& out) {
    std::vector<const BugRecord*> sorted;
    sorted.reserve(records.size());
    for (const auto& record : records) {
        auto violations = validate(record);
        if (!violations.empty()) {
            throw InvalidRecord("record " + record.id + " is invalid", violations);
        }
        sorted.push_back(&record);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const BugRecord* a, const BugRecord* b) { return a->id < b->id; });
    for (const auto* record : sorted) {
        out << record_to_jsonl(*record) << "\n";
    }
}

void export_csv_summary(const DatasetStats& stats, std::ostream& out) {
    out << "table,source,key,count,share\n";
    for (Source s : kSources) {
        out << "totals," << to_string(s) << ",records," << get_count(stats.totals, s) << ","
            << render_percent(get_count(stats.totals, s), stats.total()) << "\n";
    }
    for (Source s : kSources) {
        out << "totals," << to_string(s) << ",projects,"
            << get_count(stats.projects_per_source, s) << ",\n";
    }
    out << "totals,all,projects," << stats.project_count << ",\n";
    for (const auto& [language, counts] : stats.by_language) {
        for (Source s : kSources) {
            if (!get_count(counts, s)) continue;
            out << "languages," << to_string(s) << "," << language << "," << get_count(counts, s)
                << ",\n";
        }
    }
    for (Source s : kSources) {
        auto it = stats.by_type.find(s);
        if (it == stats.by_type.end()) continue;
        std::uint64_t denom = get_count(stats.totals, s);
        for (const auto& [key, count] : ranked(it->second, 0)) {
            std::string quoted = key;
            if (quoted.find(',') != std::string::npos || quoted.find('"') != std::string::npos) {
                std::string escaped;
                for (char c : quoted) {
                    if (c == '"') escaped += '"';
                    escaped += c;
                }
                quoted = "\"" + escaped + "\"";
            }
            out << "types," << to_string(s) << "," << quoted << "," << count << ","
                << render_percent(count, denom) << "\n";
        }
    }
    for (const auto& [year, counts] : stats.by_year) {
        for (Source s : kSources) {
            if (!get_count(counts, s)) continue;
            out << "years," << to_string(s) << "," << year << "," << get_count(counts, s) << ",\n";
        }
    }
}

} // namespace pbc::dataset
