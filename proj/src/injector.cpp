#include "pbc/injector.hpp"

#include "pbc/error.hpp"
#include "pbc/log.hpp"
#include "pbc/sha.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace pbc {

std::string CampaignStats::to_kv() const {
    std::ostringstream out;
    out << "statements=" << statements << "\n"
        << "candidates=" << candidates << "\n"
        << "benign=" << benign << "\n"
        << "compilation_bugs=" << compilation_bugs << "\n"
        << "behavior_bugs=" << behavior_bugs << "\n"
        << "infrastructure_failures=" << infrastructure_failures << "\n"
        << "wall_time_s=" << wall_time_s << "\n";
    return out.str();
}

std::vector<InjectionRule> applicable_rules(const TargetAdapter& adapter, const Snapshot& snapshot,
                                            const Statement& stmt) {
    return adapter.catalog().applicable(snapshot, stmt);
}

std::vector<MutantCandidate> generate_candidates(const TargetAdapter& adapter,
                                                 const Snapshot& snapshot, const Statement& stmt,
                                                 const InjectionRule& rule, std::uint64_t seed,
                                                 int cap) {
    return adapter.catalog().candidates(snapshot, stmt, rule, seed, cap);
}

BugType diagnose_failure(const TestRunOutcome& outcome) {
    const TestResult* first = nullptr;
    bool all_timeouts = true;
    for (const auto& [name, result] : outcome.results) {
        if (result.passed()) continue;
        if (!first) first = &result;
        if (result.status != TestResult::Status::Timeout) all_timeouts = false;
    }
    if (!first) throw AdapterFailure("diagnose_failure called without failures");
    if (all_timeouts) return BugType::test_failure("timeout", "suite timeout");
    std::string kind =
        first->status == TestResult::Status::Timeout ? "timeout" : first->failure_kind;
    return BugType::test_failure(kind, first->message);
}

std::string tree_revision(const FileMap& files) {
    std::string buf;
    for (const auto& [path, content] : files) {
        buf += path;
        buf += '\0';
        buf += std::to_string(content.size());
        buf += '\0';
        buf += content;
    }
    return sha256_hex(buf);
}

namespace {

std::string region_text(const util::Lines& lines, std::size_t from, std::size_t count) {
    std::string out;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx = from + i;
        out += lines.lines[idx];
        bool last_of_file = idx + 1 == lines.lines.size();
        if (!last_of_file || lines.final_newline) out += '\n';
    }
    return out;
}

} // namespace

DiffHunk mutant_hunk(const std::string& file, const std::string& original,
                     const std::string& mutated) {
    auto orig = util::Lines::split(original);
    auto mut = util::Lines::split(mutated);

    std::size_t prefix = 0;
    while (prefix < orig.lines.size() && prefix < mut.lines.size() &&
           orig.lines[prefix] == mut.lines[prefix]) {
        ++prefix;
    }
    std::size_t suffix = 0;
    while (suffix < orig.lines.size() - prefix && suffix < mut.lines.size() - prefix &&
           orig.lines[orig.lines.size() - 1 - suffix] == mut.lines[mut.lines.size() - 1 - suffix]) {
        ++suffix;
    }
    // A trailing-newline-only change keeps all lines equal; treat the last
    // line as changed in that case.
    if (prefix == orig.lines.size() && prefix == mut.lines.size() &&
        orig.final_newline != mut.final_newline) {
        prefix -= 1;
    }
    std::size_t orig_count = orig.lines.size() - prefix - suffix;
    std::size_t mut_count = mut.lines.size() - prefix - suffix;
    if (orig_count == 0 && mut_count == 0) {
        throw AdapterFailure("candidate produced no textual change in " + file);
    }

    DiffHunk hunk;
    hunk.location.file_path = file;
    if (mut_count > 0) {
        hunk.location.before_span =
            std::make_pair(static_cast<int>(prefix + 1), static_cast<int>(prefix + mut_count));
        hunk.before_text = region_text(mut, prefix, mut_count);
    }
    if (orig_count > 0) {
        hunk.location.after_span =
            std::make_pair(static_cast<int>(prefix + 1), static_cast<int>(prefix + orig_count));
        hunk.after_text = region_text(orig, prefix, orig_count);
    }
    return hunk;
}

MutantOutcome evaluate(const TargetAdapter& adapter, const Snapshot& baseline,
                       const MutantCandidate& candidate, std::chrono::milliseconds suite_timeout) {
    SnapshotPtr mutant = adapter.render(baseline, candidate.edits);

    MutantOutcome outcome;
    CompileOutcome compiled = adapter.compile(*mutant);
    if (!compiled.ok) {
        outcome.kind = MutantOutcome::Kind::CompilationBug;
        if (compiled.diagnostics.empty()) {
            outcome.diagnostic = Diagnostic{"compile-failed", "compiler reported no diagnostics", "", 0};
        } else {
            outcome.diagnostic = compiled.diagnostics.front();
        }
        return outcome;
    }
    TestRunOutcome tests = adapter.run_tests(*mutant, suite_timeout);
    auto failing = tests.failing_names();
    if (failing.empty()) {
        outcome.kind = MutantOutcome::Kind::Benign;
        return outcome;
    }
    outcome.kind = MutantOutcome::Kind::BehaviorBug;
    outcome.failing_tests = std::move(failing);
    outcome.diagnosis = diagnose_failure(tests);
    return outcome;
}

namespace {

struct QueuedCandidate {
    MutantCandidate candidate;
    std::size_t order = 0;
};

struct EvalResult {
    MutantOutcome outcome;
    DiffHunk hunk;
    std::string mutant_revision;
    bool infrastructure = false;
    std::string error;
};

EvalResult evaluate_one(const TargetAdapter& adapter, const Snapshot& baseline,
                        const MutantCandidate& candidate, std::chrono::milliseconds timeout) {
    EvalResult result;
    try {
        SnapshotPtr mutant = adapter.render(baseline, candidate.edits);
        const FileMap& base_files = baseline.files();
        const FileMap& mut_files = mutant->files();

        std::string changed;
        for (const auto& [path, content] : mut_files) {
            auto it = base_files.find(path);
            if (it == base_files.end() || it->second != content) {
                if (!changed.empty()) {
                    throw AdapterFailure("candidate touched multiple files");
                }
                changed = path;
            }
        }
        if (changed.empty()) throw AdapterFailure("candidate changed nothing");
        result.hunk = mutant_hunk(changed, base_files.at(changed), mut_files.at(changed));
        result.mutant_revision = tree_revision(mut_files);

        result.outcome = evaluate(adapter, baseline, candidate, timeout);
    } catch (const Error& e) {
        result.infrastructure = true;
        result.error = e.what();
    }
    return result;
}

void verify_baseline(const TargetAdapter& adapter, const Snapshot& baseline,
                     std::chrono::milliseconds timeout) {
    CompileOutcome compiled = adapter.compile(baseline);
    if (!compiled.ok) {
        std::string message = "baseline does not compile";
        if (!compiled.diagnostics.empty()) {
            message += ": " + compiled.diagnostics.front().message;
        }
        throw BaselineRed(message);
    }
    TestRunOutcome first = adapter.run_tests(baseline, timeout);
    TestRunOutcome second = adapter.run_tests(baseline, timeout);
    if (first.results.size() != second.results.size()) {
        throw FlakyBaseline("test suite changed between runs");
    }
    for (const auto& [name, result] : first.results) {
        auto it = second.results.find(name);
        if (it == second.results.end() || it->second.passed() != result.passed()) {
            throw FlakyBaseline("test " + name + " is flaky");
        }
    }
    if (first.results.empty()) {
        throw BaselineRed("test suite is empty");
    }
    if (!first.all_passed()) {
        std::string names;
        for (const auto& name : first.failing_names()) {
            if (!names.empty()) names += ", ";
            names += name;
        }
        throw BaselineRed("baseline tests failing: " + names);
    }
}

} // namespace

CampaignResult run_campaign(const TargetAdapter& adapter, const std::filesystem::path& project_dir,
                            const CampaignOptions& options) {
    auto start = std::chrono::steady_clock::now();

    SnapshotPtr baseline = adapter.load(project_dir);
    verify_baseline(adapter, *baseline, options.suite_timeout);

    std::vector<int> rule_ids = options.rules;
    if (rule_ids.empty()) {
        for (int i = 1; i <= 16; ++i) rule_ids.push_back(i);
    }

    CampaignResult result;
    auto statements = adapter.enumerate_statements(*baseline);
    result.stats.statements = statements.size();

    std::vector<QueuedCandidate> queue;
    for (const auto& stmt : statements) {
        auto rules = adapter.catalog().applicable(*baseline, stmt);
        for (const auto& rule : rules) {
            if (std::find(rule_ids.begin(), rule_ids.end(), rule.id) == rule_ids.end()) continue;
            std::uint64_t seed = util::mix64(
                options.seed ^ util::hash_str(stmt.id.str() + "#" + std::to_string(rule.id)));
            for (auto& cand :
                 adapter.catalog().candidates(*baseline, stmt, rule, seed, options.cap)) {
                queue.push_back(QueuedCandidate{std::move(cand), queue.size()});
            }
        }
    }
    result.stats.candidates = queue.size();

    std::vector<EvalResult> evals(queue.size());
    int jobs = std::max(1, options.jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= queue.size()) break;
            evals[i] = evaluate_one(adapter, *baseline, queue[i].candidate, options.suite_timeout);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::string baseline_revision = tree_revision(baseline->files());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const auto& cand = queue[i].candidate;
        const auto& eval = evals[i];
        if (eval.infrastructure) {
            ++result.stats.infrastructure_failures;
            log::warn("candidate-infrastructure-failure",
                      {{"statement", cand.statement_id.str()},
                       {"rule", std::to_string(cand.rule_id)},
                       {"error", eval.error}});
            continue;
        }
        switch (eval.outcome.kind) {
        case MutantOutcome::Kind::Benign:
            ++result.stats.benign;
            continue;
        case MutantOutcome::Kind::CompilationBug:
            ++result.stats.compilation_bugs;
            break;
        case MutantOutcome::Kind::BehaviorBug:
            ++result.stats.behavior_bugs;
            break;
        }

        BugRecord record;
        record.source = Source::Injection;
        record.project = options.project;
        if (record.project.language.empty()) record.project.language = adapter.language();
        record.fix_commit = baseline_revision;
        record.parent_commit = eval.mutant_revision;
        record.hunks = {eval.hunk};
        if (eval.outcome.kind == MutantOutcome::Kind::CompilationBug) {
            record.bug_type =
                BugType::compile(eval.outcome.diagnostic.code, eval.outcome.diagnostic.message);
        } else {
            record.bug_type = eval.outcome.diagnosis;
            std::vector<TestSpec> tests;
            for (const auto& name : eval.outcome.failing_tests) {
                tests.push_back(TestSpec{name, "existing", std::nullopt});
            }
            record.tests = std::move(tests);
        }
        record.metadata["rule_id"] = std::to_string(cand.rule_id);
        record.metadata["rule_name"] = rule_by_id(cand.rule_id).name;
        record.metadata["statement"] = cand.statement_id.str();
        record.metadata["mutation"] = cand.description;
        record.created_at = options.created_at;
        record.id = record_id(record);
        result.records.push_back(std::move(record));
    }

    result.stats.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

} // namespace pbc
