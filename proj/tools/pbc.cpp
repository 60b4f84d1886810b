#include "pbc/dataset.hpp"
#include "pbc/error.hpp"
#include "pbc/external_adapter.hpp"
#include "pbc/injector.hpp"
#include "pbc/log.hpp"
#include "pbc/minilang/adapter.hpp"
#include "pbc/model.hpp"
#include "pbc/nvd.hpp"
#include "pbc/ossfuzz.hpp"
#include "pbc/patch.hpp"
#include "pbc/pipeline.hpp"
#include "pbc/rules.hpp"
#include "pbc/util.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>

namespace {

using namespace pbc;

std::unique_ptr<TargetAdapter> make_adapter(const std::string& spec) {
    if (spec == "minilang") return std::make_unique<minilang::MiniLangAdapter>();
    return std::make_unique<external::ExternalAdapter>(external::Config::parse_file(spec));
}

// Data goes to --out or stdout; never to stderr.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw IoError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::size_t write_records(const std::vector<BugRecord>& records, const std::string& out_path) {
    dataset::DatasetWriter writer{std::filesystem::path(out_path)};
    for (const auto& record : records) writer.append(record);
    return writer.appended();
}

struct TrackNvdArgs {
    std::string fixtures;
    bool live = false;
    std::string out;
    std::string repos = "repos";
    std::string clone_cmd;
    std::string language = "unknown";
    std::string created_at;
    std::string endpoint = "https://services.nvd.nist.gov/rest/json/cves/2.0";
    int page_size = 2000;
    int retries = 3;
};

int cmd_track_nvd(const TrackNvdArgs& args) {
    std::unique_ptr<nvd::NvdSource> source;
    if (args.live) {
        nvd::LiveOptions live;
        live.endpoint = args.endpoint;
        live.page_size = args.page_size;
        live.max_attempts = args.retries;
        if (const char* key = std::getenv("PBC_NVD_API_KEY")) live.api_key = key;
        source = nvd::make_live_source(live);
    } else {
        source = std::make_unique<nvd::FixtureNvdSource>(args.fixtures);
    }

    pipeline::TrackNvdOptions options;
    options.repos_dir = args.repos;
    options.clone_cmd = args.clone_cmd;
    options.language = args.language;
    options.created_at = args.created_at;

    auto result = pipeline::track_nvd(*source, options);
    std::size_t appended = write_records(result.records, args.out);
    log::info("wrote-records", {{"file", args.out}, {"appended", std::to_string(appended)}});
    std::cerr << result.skips.to_kv();
    return 0;
}

struct TrackOssFuzzArgs {
    std::string repo;
    std::string fixtures;
    bool live = false;
    std::string out;
    std::string language = "unknown";
    std::string created_at;
    std::string endpoint = "https://oss-fuzz.com/api";
    int retries = 3;
};

int cmd_track_ossfuzz(const TrackOssFuzzArgs& args) {
    std::unique_ptr<ossfuzz::OssFuzzSource> source;
    if (args.live) {
        source = ossfuzz::make_live_source(args.endpoint, args.retries);
    } else {
        source = std::make_unique<ossfuzz::FixtureOssFuzzSource>(args.fixtures);
    }

    pipeline::TrackOssFuzzOptions options;
    options.repo = args.repo;
    options.dataset_dir = std::filesystem::path(args.out).parent_path();
    options.language = args.language;
    options.created_at = args.created_at;

    auto result = pipeline::track_ossfuzz(*source, options);
    std::size_t appended = write_records(result.records, args.out);
    log::info("wrote-records", {{"file", args.out}, {"appended", std::to_string(appended)}});
    std::cerr << result.skips.to_kv();
    return 0;
}

struct InjectArgs {
    std::string project;
    std::string adapter = "minilang";
    std::string rules = "1-16";
    std::uint64_t seed = 0;
    int cap = 1;
    int jobs = 1;
    std::string out;
    std::string stats;
    std::string created_at;
    std::string host = "local";
    std::string owner = "local";
    std::string name;
    std::string language;
    int timeout_ms = 0;
};

int cmd_inject(const InjectArgs& args) {
    auto adapter = make_adapter(args.adapter);

    CampaignOptions options;
    options.rules = parse_rule_list(args.rules);
    options.seed = args.seed;
    options.cap = args.cap;
    options.jobs = args.jobs;
    options.created_at = args.created_at;
    options.suite_timeout = std::chrono::milliseconds(args.timeout_ms);
    options.project.host = args.host;
    options.project.owner = args.owner;
    options.project.name =
        args.name.empty() ? std::filesystem::path(args.project).filename().string() : args.name;
    options.project.language = args.language;

    auto result = run_campaign(*adapter, args.project, options);
    std::size_t appended = write_records(result.records, args.out);
    log::info("campaign-done", {{"records", std::to_string(appended)},
                                {"candidates", std::to_string(result.stats.candidates)}});
    if (!args.stats.empty()) {
        util::write_file(args.stats, result.stats.to_kv());
    } else {
        std::cerr << result.stats.to_kv();
    }
    return 0;
}

struct ReproduceArgs {
    std::string records;
    std::string adapter = "minilang";
    std::string repo;
    std::string project;
    std::string dataset_dir;
    std::string out;
    int timeout_s = 300;
};

int cmd_reproduce(const ReproduceArgs& args) {
    auto adapter = make_adapter(args.adapter);
    auto records = dataset::read_records(args.records);
    std::filesystem::path dataset_dir =
        args.dataset_dir.empty() ? std::filesystem::path(args.records).parent_path()
                                 : std::filesystem::path(args.dataset_dir);

    std::vector<BugRecord> updated;
    std::size_t reproducible = 0;
    for (auto& record : records) {
        if (!record.tests || record.tests->empty()) {
            std::cout << record.id << " skipped (no tests)\n";
            updated.push_back(record);
            continue;
        }
        FileMap buggy;
        FileMap fixed;
        if (record.source == Source::Injection) {
            if (args.project.empty()) {
                throw UsageError("--project is required to reproduce injection records");
            }
            fixed = adapter->load(args.project)->files();
            buggy = apply_hunks_reverse(fixed, record.hunks);
        } else {
            if (args.repo.empty()) {
                throw UsageError("--repo is required to reproduce mined records");
            }
            buggy = git::tree_at(args.repo, record.parent_commit);
            fixed = git::tree_at(args.repo, record.fix_commit);
        }
        auto result = ossfuzz::reproduce(record, *adapter, buggy, fixed, dataset_dir,
                                         std::chrono::seconds(args.timeout_s));
        std::cout << record.id << " " << to_string(result.verdict)
                  << (result.note.empty() ? "" : " (" + result.note + ")") << "\n";
        if (result.verdict == ossfuzz::ReproResult::Verdict::Reproducible) ++reproducible;
        if (result.verdict != ossfuzz::ReproResult::Verdict::Inconclusive) {
            record.metadata["reproducible"] =
                result.verdict == ossfuzz::ReproResult::Verdict::Reproducible ? "true" : "false";
            record.id = record_id(record);
        }
        updated.push_back(record);
    }
    if (!args.out.empty()) {
        write_records(updated, args.out);
    }
    log::info("reproduce-done", {{"records", std::to_string(records.size())},
                                 {"reproducible", std::to_string(reproducible)}});
    return 0;
}

std::vector<std::filesystem::path> to_paths(const std::vector<std::string>& in) {
    return {in.begin(), in.end()};
}

int cmd_stats(const std::vector<std::string>& inputs, int top, const std::string& out_path) {
    auto records = dataset::read_record_files(to_paths(inputs));
    auto stats = dataset::compute_stats(records);
    OutputStream out(out_path);
    dataset::print_stats(out.stream(), stats, top);
    return 0;
}

int cmd_report_years(const std::vector<std::string>& inputs, int cutoff, int floor,
                     const std::string& out_path) {
    auto records = dataset::read_record_files(to_paths(inputs));
    auto report = dataset::year_report(records, cutoff, floor);
    OutputStream out(out_path);
    dataset::print_year_report(out.stream(), report);
    return 0;
}

int cmd_export(const std::vector<std::string>& inputs, const std::string& format,
               const std::string& out_path) {
    auto records = dataset::read_record_files(to_paths(inputs));
    OutputStream out(out_path);
    if (format == "jsonl") {
        dataset::export_jsonl(records, out.stream());
    } else if (format == "csv-summary") {
        dataset::export_csv_summary(dataset::compute_stats(records), out.stream());
    } else {
        throw UsageError("unknown export format: " + format);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PreciseBugCollector: test-validated bug injection and bug-fix mining"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress informational logging");

    auto* track = app.add_subcommand("track", "collect bug-fix records from bug repositories");
    track->require_subcommand(1);

    TrackNvdArgs nvd_args;
    auto* track_nvd = track->add_subcommand("nvd", "vulnerability collection");
    auto* nvd_fixtures =
        track_nvd->add_option("--fixtures", nvd_args.fixtures, "directory of recorded pages");
    auto* nvd_live = track_nvd->add_flag("--live", nvd_args.live, "query the live endpoint");
    track_nvd->add_option("--out", nvd_args.out, "output records file")->required();
    track_nvd->add_option("--repos", nvd_args.repos, "directory of <owner>__<name> checkouts");
    track_nvd->add_option("--clone-cmd", nvd_args.clone_cmd,
                          "clone command template with {url} and {dest}");
    track_nvd->add_option("--language", nvd_args.language, "language tag for records");
    track_nvd->add_option("--created-at", nvd_args.created_at, "fixed created_at timestamp");
    track_nvd->add_option("--endpoint", nvd_args.endpoint, "live API endpoint");
    track_nvd->add_option("--page-size", nvd_args.page_size, "live page size");
    track_nvd->add_option("--retries", nvd_args.retries, "max fetch attempts");
    nvd_fixtures->excludes(nvd_live);
    track_nvd->callback([&]() {
        if (!nvd_args.live && nvd_args.fixtures.empty()) {
            throw UsageError("track nvd requires --fixtures DIR or an explicit --live");
        }
    });

    TrackOssFuzzArgs oss_args;
    auto* track_oss = track->add_subcommand("ossfuzz", "fuzzing-bug collection");
    track_oss->add_option("--repo", oss_args.repo, "local checkout to scan")->required();
    auto* oss_fixtures =
        track_oss->add_option("--fixtures", oss_args.fixtures, "directory of recorded issues");
    auto* oss_live = track_oss->add_flag("--live", oss_args.live, "query the live endpoint");
    track_oss->add_option("--out", oss_args.out, "output records file")->required();
    track_oss->add_option("--language", oss_args.language, "language tag for records");
    track_oss->add_option("--created-at", oss_args.created_at, "fixed created_at timestamp");
    track_oss->add_option("--endpoint", oss_args.endpoint, "live API endpoint");
    track_oss->add_option("--retries", oss_args.retries, "max fetch attempts");
    oss_fixtures->excludes(oss_live);
    track_oss->callback([&]() {
        if (!oss_args.live && oss_args.fixtures.empty()) {
            throw UsageError("track ossfuzz requires --fixtures DIR or an explicit --live");
        }
    });

    InjectArgs inject_args;
    auto* inject = app.add_subcommand("inject", "generate test-validated injected bugs");
    inject->add_option("--project", inject_args.project, "project directory")->required();
    inject->add_option("--adapter", inject_args.adapter, "minilang or adapter config file");
    inject->add_option("--rules", inject_args.rules, "rule subset, e.g. 1-16 or 2,5,9");
    inject->add_option("--seed", inject_args.seed, "campaign seed");
    inject->add_option("--cap", inject_args.cap, "candidates per statement and rule");
    inject->add_option("--jobs", inject_args.jobs, "parallel evaluations")
        ->check(CLI::Range(1, 256));
    inject->add_option("--out", inject_args.out, "output records file")->required();
    inject->add_option("--stats", inject_args.stats, "campaign stats file (key=value)");
    inject->add_option("--created-at", inject_args.created_at, "fixed created_at timestamp");
    inject->add_option("--project-host", inject_args.host, "project host tag");
    inject->add_option("--project-owner", inject_args.owner, "project owner tag");
    inject->add_option("--project-name", inject_args.name, "project name tag");
    inject->add_option("--language", inject_args.language, "language tag for records");
    inject->add_option("--timeout-ms", inject_args.timeout_ms, "suite timeout per mutant");

    ReproduceArgs repro_args;
    auto* repro = app.add_subcommand("reproduce", "verify records against their tests");
    repro->add_option("--records", repro_args.records, "records file")->required();
    repro->add_option("--adapter", repro_args.adapter, "minilang or adapter config file");
    repro->add_option("--repo", repro_args.repo, "checkout for mined records");
    repro->add_option("--project", repro_args.project, "baseline for injection records");
    repro->add_option("--dataset-dir", repro_args.dataset_dir,
                      "directory holding testcases/ blobs");
    repro->add_option("--out", repro_args.out, "write updated records here");
    repro->add_option("--timeout-s", repro_args.timeout_s, "per-test timeout");

    std::vector<std::string> stats_in;
    int stats_top = 10;
    std::string stats_out;
    auto* stats = app.add_subcommand("stats", "dataset distribution tables");
    stats->add_option("--in", stats_in, "records files")->required()->expected(-1);
    stats->add_option("--top", stats_top, "rows per type table");
    stats->add_option("--out", stats_out, "write tables here instead of stdout");

    std::vector<std::string> years_in;
    int years_cutoff = 2022;
    int years_floor = 2015;
    std::string years_out;
    auto* report = app.add_subcommand("report", "dataset reports");
    report->require_subcommand(1);
    auto* years = report->add_subcommand("years", "per-year record counts");
    years->add_option("--in", years_in, "records files")->required()->expected(-1);
    years->add_option("--cutoff", years_cutoff, "flag records at/after this year");
    years->add_option("--floor", years_floor, "group earlier years into one row");
    years->add_option("--out", years_out, "write the table here instead of stdout");

    std::vector<std::string> export_in;
    std::string export_format = "jsonl";
    std::string export_out;
    auto* exp = app.add_subcommand("export", "validated dataset exports");
    exp->add_option("--in", export_in, "records files")->required()->expected(-1);
    exp->add_option("--format", export_format, "jsonl or csv-summary");
    exp->add_option("--out", export_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        log::set_quiet(quiet);

        if (track_nvd->parsed()) return cmd_track_nvd(nvd_args);
        if (track_oss->parsed()) return cmd_track_ossfuzz(oss_args);
        if (inject->parsed()) return cmd_inject(inject_args);
        if (repro->parsed()) return cmd_reproduce(repro_args);
        if (stats->parsed()) return cmd_stats(stats_in, stats_top, stats_out);
        if (years->parsed()) return cmd_report_years(years_in, years_cutoff, years_floor, years_out);
        if (exp->parsed()) return cmd_export(export_in, export_format, export_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits 0, bad usage exits 2
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidRecord& e) {
        std::cerr << "error: " << e.what() << "\n";
        for (const auto& violation : e.violations()) {
            std::cerr << "  violation: " << violation << "\n";
        }
        return 1;
    } catch (const Error& e) {
        std::cerr << "error (" << e.cause() << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
