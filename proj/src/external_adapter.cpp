#include "pbc/external_adapter.hpp"

#include "pbc/error.hpp"
#include "pbc/process.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <regex>

namespace pbc::external {

Config Config::parse(const std::string& content, const std::filesystem::path& origin) {
    Config cfg;
    int lineno = 0;
    for (const auto& raw : util::Lines::split(content).lines) {
        ++lineno;
        std::string line = util::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin.string() + ":" + std::to_string(lineno) +
                             ": expected key=value");
        }
        std::string key = util::trim(line.substr(0, eq));
        std::string value = util::trim(line.substr(eq + 1));
        if (key == "compile_cmd") cfg.compile_cmd = value;
        else if (key == "test_cmd") cfg.test_cmd = value;
        else if (key == "workdir") cfg.workdir = value;
        else if (key == "timeout_s") cfg.timeout_s = std::stoi(value);
        else if (key == "result_regex") cfg.result_regex = value;
        else if (key == "failing_test_group") cfg.failing_test_group = value;
        else if (key == "compile_diag_regex") cfg.compile_diag_regex = value;
        else if (key == "sources") cfg.sources = value;
        else if (key == "language") cfg.language = value;
        else {
            throw ParseError(origin.string() + ":" + std::to_string(lineno) + ": unknown key " +
                             key);
        }
    }
    if (cfg.compile_cmd.empty() || cfg.test_cmd.empty()) {
        throw ParseError(origin.string() + ": compile_cmd and test_cmd are required");
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    return parse(util::read_file(path), path);
}

NamedRegex NamedRegex::compile(const std::string& raw) {
    NamedRegex out;
    int group = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size()) {
            out.pattern += raw[i];
            out.pattern += raw[i + 1];
            ++i;
            continue;
        }
        if (raw[i] == '(') {
            if (raw.compare(i, 3, "(?:") == 0) {
                out.pattern += "(?:";
                i += 2;
                continue;
            }
            if (raw.compare(i, 3, "(?<") == 0) {
                auto close = raw.find('>', i + 3);
                if (close == std::string::npos) throw ParseError("unterminated (?<name> group");
                ++group;
                out.groups[raw.substr(i + 3, close - i - 3)] = group;
                out.pattern += '(';
                i = close;
                continue;
            }
            ++group;
        }
        out.pattern += raw[i];
    }
    return out;
}

namespace {

class ExternalSnapshot : public Snapshot {
public:
    explicit ExternalSnapshot(FileMap files) : files_(std::move(files)) {}
    const FileMap& files() const override { return files_; }

private:
    FileMap files_;
};

struct LineStmt {
    Statement stmt;
    std::string file;
    int line = 0; // 1-based
    std::string text;
};

bool statement_like(const std::string& line) {
    std::string t = util::trim(line);
    return !t.empty() && t.rfind("//", 0) != 0 && t[0] != '#';
}

StmtKind guess_kind(const std::string& line) {
    static const std::regex call_re(R"(^\s*[A-Za-z_][\w.]*\s*\()");
    if (line.find("return") != std::string::npos) return StmtKind::Return;
    if (line.find('=') != std::string::npos) return StmtKind::Assignment;
    if (std::regex_search(line, call_re)) return StmtKind::Call;
    return StmtKind::Call;
}

std::vector<std::string> source_files(const Config& cfg, const FileMap& files) {
    std::vector<std::string> out;
    if (!cfg.sources.empty()) {
        for (auto& s : util::split(cfg.sources, ';')) {
            std::string t = util::trim(s);
            if (!t.empty()) out.push_back(t);
        }
        return out;
    }
    for (const auto& [path, content] : files) out.push_back(path);
    return out;
}

std::vector<LineStmt> line_statements(const Config& cfg, const FileMap& files) {
    std::vector<LineStmt> stmts;
    for (const auto& path : source_files(cfg, files)) {
        auto it = files.find(path);
        if (it == files.end()) continue;
        auto lines = util::Lines::split(it->second).lines;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (!statement_like(lines[i])) continue;
            LineStmt ls;
            ls.file = path;
            ls.line = static_cast<int>(i + 1);
            ls.text = lines[i];
            ls.stmt.id = StatementId{path, "L" + std::to_string(ls.line)};
            ls.stmt.kind = guess_kind(lines[i]);
            ls.stmt.span.file_path = path;
            ls.stmt.span.before_span = std::make_pair(ls.line, ls.line);
            ls.stmt.node = stmts.size();
            stmts.push_back(std::move(ls));
        }
    }
    return stmts;
}

const std::regex& ctor_regex() {
    static const std::regex re(R"(\bnew\s+([A-Za-z_]\w*)\s*\()");
    return re;
}

// Rule-4 over constructor-call lines; everything else stays inapplicable
// because the adapter has no syntax tree to rewrite.
class ExternalCatalog : public RuleCatalog {
public:
    explicit ExternalCatalog(const Config& cfg) : config_(cfg) {}

    std::vector<InjectionRule> applicable(const Snapshot& snapshot,
                                          const Statement& stmt) const override {
        if (!rewrite(snapshot, stmt).empty()) return {rule_by_id(4)};
        return {};
    }

    std::vector<MutantCandidate> candidates(const Snapshot& snapshot, const Statement& stmt,
                                            const InjectionRule& rule, std::uint64_t seed,
                                            int cap) const override {
        if (rule.id != 4 || cap <= 0) return {};
        auto options = rewrite(snapshot, stmt);
        if (options.empty()) return {};
        util::Rng rng(util::mix64(seed ^ 4));
        for (std::size_t i = options.size(); i > 1; --i) {
            std::swap(options[i - 1], options[rng.pick(i)]);
        }
        if (options.size() > static_cast<std::size_t>(cap)) {
            options.resize(static_cast<std::size_t>(cap));
        }
        std::vector<MutantCandidate> out;
        for (auto& [text, desc] : options) {
            MutantCandidate cand;
            cand.statement_id = stmt.id;
            cand.rule_id = 4;
            cand.seed = seed;
            StatementEdit edit;
            edit.target = stmt.id;
            edit.action = StatementEdit::Action::Replace;
            edit.text = std::move(text);
            cand.edits.push_back(std::move(edit));
            cand.description = std::move(desc);
            out.push_back(std::move(cand));
        }
        return out;
    }

private:
    // (replacement line text, description) pairs.
    std::vector<std::pair<std::string, std::string>> rewrite(const Snapshot& snapshot,
                                                             const Statement& stmt) const {
        auto stmts = line_statements(config_, snapshot.files());
        if (stmt.node >= stmts.size()) return {};
        const LineStmt& ls = stmts[stmt.node];

        std::smatch m;
        if (!std::regex_search(ls.text, m, ctor_regex())) return {};
        std::string own = m[1].str();

        // Distinct constructor names elsewhere in the same file, by first
        // occurrence.
        std::vector<std::string> others;
        auto it = snapshot.files().find(ls.file);
        if (it != snapshot.files().end()) {
            auto begin = std::sregex_iterator(it->second.begin(), it->second.end(), ctor_regex());
            for (auto iter = begin; iter != std::sregex_iterator(); ++iter) {
                std::string name = (*iter)[1].str();
                if (name != own && std::find(others.begin(), others.end(), name) == others.end()) {
                    others.push_back(name);
                }
            }
        }
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& name : others) {
            std::string replaced =
                std::regex_replace(ls.text, ctor_regex(), "new " + name + "(",
                                   std::regex_constants::format_first_only);
            out.emplace_back(replaced, "new " + own + " -> new " + name);
        }
        return out;
    }

    const Config& config_;
};

} // namespace

ExternalAdapter::ExternalAdapter(Config config)
    : config_(std::move(config)), catalog_(std::make_unique<ExternalCatalog>(config_)) {}

ExternalAdapter::~ExternalAdapter() = default;

SnapshotPtr ExternalAdapter::load(const std::filesystem::path& root) const {
    if (!std::filesystem::is_directory(root)) {
        throw AdapterFailure("project directory not found: " + root.string());
    }
    FileMap files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        auto rel = std::filesystem::relative(entry.path(), root).generic_string();
        if (rel.rfind(".git/", 0) == 0) continue;
        files[rel] = util::read_file(entry.path());
    }
    return std::make_shared<ExternalSnapshot>(std::move(files));
}

SnapshotPtr ExternalAdapter::from_files(FileMap files) const {
    return std::make_shared<ExternalSnapshot>(std::move(files));
}

std::vector<Statement> ExternalAdapter::enumerate_statements(const Snapshot& snapshot) const {
    std::vector<Statement> out;
    for (auto& ls : line_statements(config_, snapshot.files())) out.push_back(ls.stmt);
    return out;
}

SnapshotPtr ExternalAdapter::render(const Snapshot& snapshot,
                                    const std::vector<StatementEdit>& edits) const {
    auto stmts = line_statements(config_, snapshot.files());
    FileMap files = snapshot.files();

    struct Resolved {
        const StatementEdit* edit;
        const LineStmt* stmt;
    };
    std::vector<Resolved> ordered;
    std::vector<std::string> seen;
    for (const auto& edit : edits) {
        std::string key = edit.target.str();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw ConflictingEdits("two edits target statement " + key);
        }
        seen.push_back(key);
        auto found = std::find_if(stmts.begin(), stmts.end(), [&](const LineStmt& ls) {
            return ls.stmt.id == edit.target;
        });
        if (found == stmts.end()) throw AdapterFailure("unknown statement " + key);
        ordered.push_back(Resolved{&edit, &*found});
    }
    // Apply bottom-up per file so earlier line numbers stay valid.
    std::sort(ordered.begin(), ordered.end(), [](const Resolved& a, const Resolved& b) {
        if (a.stmt->file != b.stmt->file) return a.stmt->file < b.stmt->file;
        return a.stmt->line > b.stmt->line;
    });

    for (const auto& [edit, stmt] : ordered) {
        auto lines = util::Lines::split(files[stmt->file]);
        std::size_t idx = static_cast<std::size_t>(stmt->line - 1);
        switch (edit->action) {
        case StatementEdit::Action::Replace:
            lines.lines[idx] = edit->text;
            break;
        case StatementEdit::Action::Delete:
            lines.lines.erase(lines.lines.begin() + static_cast<long>(idx));
            break;
        case StatementEdit::Action::InsertBefore: {
            auto inserted = util::Lines::split(edit->text).lines;
            lines.lines.insert(lines.lines.begin() + static_cast<long>(idx), inserted.begin(),
                               inserted.end());
            break;
        }
        }
        files[stmt->file] = lines.join();
    }
    return std::make_shared<ExternalSnapshot>(std::move(files));
}

namespace {

util::TempDir materialize(const FileMap& files) {
    util::TempDir dir("pbc-ext");
    for (const auto& [path, content] : files) {
        util::write_file(dir.path() / path, content);
    }
    return dir;
}

ProcessResult run_command(const Config& cfg, const std::filesystem::path& scratch,
                          const std::string& command, std::chrono::milliseconds timeout) {
    ProcessOptions opts;
    opts.cwd = scratch / cfg.workdir;
    opts.timeout = timeout;
    auto result = run_shell(command, opts);
    if (!result.timed_out && result.exit_code == 127) {
        throw AdapterFailure("command not found: " + command);
    }
    return result;
}

std::string head_of(const std::string& text, std::size_t limit = 400) {
    std::string t = util::trim(text);
    if (t.size() > limit) t = t.substr(0, limit) + "...";
    return t;
}

} // namespace

CompileOutcome ExternalAdapter::compile(const Snapshot& snapshot) const {
    auto scratch = materialize(snapshot.files());
    auto result = run_command(config_, scratch.path(), config_.compile_cmd,
                              std::chrono::seconds(config_.timeout_s));

    CompileOutcome outcome;
    outcome.ok = result.ok();
    if (outcome.ok) return outcome;

    std::string output = result.out + result.err;
    if (!config_.compile_diag_regex.empty()) {
        auto named = NamedRegex::compile(config_.compile_diag_regex);
        std::regex re(named.pattern);
        for (const auto& line : util::Lines::split(output).lines) {
            std::smatch m;
            if (!std::regex_search(line, m, re)) continue;
            Diagnostic diag;
            auto group_text = [&](const char* name) -> std::string {
                auto it = named.groups.find(name);
                if (it == named.groups.end()) return "";
                auto sub = m[static_cast<std::size_t>(it->second)];
                return sub.matched ? sub.str() : "";
            };
            diag.code = group_text("code");
            diag.message = group_text("message");
            if (diag.code.empty()) diag.code = "compile-failed";
            if (diag.message.empty()) diag.message = line;
            outcome.diagnostics.push_back(std::move(diag));
        }
    }
    if (outcome.diagnostics.empty()) {
        outcome.diagnostics.push_back(
            Diagnostic{"compile-failed", head_of(output), "", 0});
    }
    return outcome;
}

TestRunOutcome ExternalAdapter::run_tests(const Snapshot& snapshot,
                                          std::chrono::milliseconds suite_timeout) const {
    if (suite_timeout.count() <= 0) suite_timeout = default_timeout();
    auto scratch = materialize(snapshot.files());
    auto result = run_command(config_, scratch.path(), config_.test_cmd, suite_timeout);

    TestRunOutcome outcome;
    if (result.timed_out) {
        outcome.results["suite"] =
            TestResult{TestResult::Status::Timeout, "timeout", "suite timeout"};
        return outcome;
    }

    if (!config_.result_regex.empty()) {
        auto named = NamedRegex::compile(config_.result_regex);
        std::regex re(named.pattern);
        auto it = named.groups.find(config_.failing_test_group);
        int group = it == named.groups.end() ? 0 : it->second;
        for (const auto& line : util::Lines::split(result.out + result.err).lines) {
            std::smatch m;
            if (!std::regex_search(line, m, re)) continue;
            std::string name = group > 0 && m[static_cast<std::size_t>(group)].matched
                                   ? m[static_cast<std::size_t>(group)].str()
                                   : "unnamed";
            outcome.results[name] =
                TestResult{TestResult::Status::Fail, "assertion", util::trim(line)};
        }
    }
    if (outcome.results.empty()) {
        // Exit-code fallback: one whole-suite verdict.
        if (result.signal != 0) {
            outcome.results["suite"] = TestResult{TestResult::Status::Fail, "crash",
                                                  "terminated by signal " +
                                                      std::to_string(result.signal)};
        } else if (result.exit_code != 0) {
            outcome.results["suite"] =
                TestResult{TestResult::Status::Fail, "assertion", head_of(result.out + result.err)};
        } else {
            outcome.results["suite"] = TestResult{};
        }
    }
    return outcome;
}

std::chrono::milliseconds ExternalAdapter::default_timeout() const {
    return std::chrono::seconds(config_.timeout_s);
}

const RuleCatalog& ExternalAdapter::catalog() const {
    return *catalog_;
}

} // namespace pbc::external
