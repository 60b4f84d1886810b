#include "pbc/minilang/adapter.hpp"

#include "pbc/error.hpp"
#include "pbc/minilang/check.hpp"
#include "pbc/minilang/interp.hpp"
#include "pbc/minilang/parser.hpp"
#include "pbc/util.hpp"

#include <algorithm>

namespace pbc::minilang {

const RuleCatalog& minilang_catalog(); // rules.cpp

bool is_test_file(const std::string& path) {
    return path.rfind("tests/", 0) == 0;
}

const MiniSnapshot& as_mini(const Snapshot& snapshot) {
    const auto* mini = dynamic_cast<const MiniSnapshot*>(&snapshot);
    if (!mini) throw AdapterFailure("snapshot does not belong to the minilang adapter");
    return *mini;
}

const StmtEntry* MiniSnapshot::find(const StatementId& id) const {
    auto it = by_id_.find(id.str());
    return it == by_id_.end() ? nullptr : &entries_[static_cast<std::size_t>(it->second)];
}

const ParsedFile& MiniSnapshot::file_of(const StmtEntry& entry) const {
    return parsed_[static_cast<std::size_t>(entry.file)];
}

bool MiniSnapshot::is_ancestor(int maybe_ancestor, int entry) const {
    int cur = entries_[static_cast<std::size_t>(entry)].parent_entry;
    while (cur >= 0) {
        if (cur == maybe_ancestor) return true;
        cur = entries_[static_cast<std::size_t>(cur)].parent_entry;
    }
    return false;
}

namespace {

// Parses "path:line:col: message" back into a diagnostic.
Diagnostic make_parse_diagnostic(const std::string& what) {
    Diagnostic diag;
    diag.code = "syntax error";
    diag.message = what;
    auto first = what.find(':');
    if (first != std::string::npos) {
        diag.file = what.substr(0, first);
        auto second = what.find(':', first + 1);
        if (second != std::string::npos) {
            try {
                diag.line = std::stoi(what.substr(first + 1, second - first - 1));
            } catch (...) {
            }
        }
    }
    return diag;
}

} // namespace

// Build access to MiniSnapshot internals.
class MiniSnapshotBuilder {
public:
    static std::shared_ptr<MiniSnapshot> build(FileMap files) {
        auto snap = std::make_shared<MiniSnapshot>();
        snap->files_ = std::move(files);
        for (const auto& [path, content] : snap->files_) {
            if (path.size() < 3 || path.substr(path.size() - 3) != ".ml") continue;
            try {
                snap->parsed_.push_back(parse_file(path, content));
            } catch (const ParseError& e) {
                if (!snap->parse_error_) snap->parse_error_ = make_parse_diagnostic(e.what());
            }
        }
        if (!snap->parse_error_) {
            Enumerator(*snap).run();
        }
        return snap;
    }

private:
    class Enumerator {
    public:
        explicit Enumerator(MiniSnapshot& snap) : snap_(snap) {}

    void run() {
        for (std::size_t f = 0; f < snap_.parsed().size(); ++f) {
            const ParsedFile& file = snap_.parsed()[f];
            if (is_test_file(file.path)) continue;
            for (std::size_t i = 0; i < file.functions.size(); ++i) {
                const Function& fn = file.functions[i];
                visit_list(file, static_cast<int>(f), static_cast<int>(i), fn.body,
                           fn.name, -1);
            }
        }
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            by_id_.emplace(entries_[i].stmt.id.str(), static_cast<int>(i));
        }
        snap_.entries_ = std::move(entries_);
        snap_.by_id_ = std::move(by_id_);
    }

private:
    static StmtKind map_kind(Stmt::Kind kind) {
        switch (kind) {
        case Stmt::Kind::Decl: return StmtKind::Declaration;
        case Stmt::Kind::Assign: return StmtKind::Assignment;
        case Stmt::Kind::CallStmt: return StmtKind::Call;
        case Stmt::Kind::Assert: return StmtKind::Call;
        case Stmt::Kind::If: return StmtKind::If;
        case Stmt::Kind::While: return StmtKind::While;
        case Stmt::Kind::Return: return StmtKind::Return;
        case Stmt::Kind::Block: return StmtKind::Block;
        }
        return StmtKind::Call;
    }

    int add_entry(const ParsedFile& file, int file_idx, int func_idx, int arena,
                  const std::string& path, int parent_entry, int pos) {
        const Stmt& s = file.stmt(arena);
        StmtEntry entry;
        entry.stmt.id = StatementId{file.path, path};
        entry.stmt.kind = map_kind(s.kind);
        entry.stmt.span.file_path = file.path;
        entry.stmt.span.before_span = std::make_pair(s.span.line_begin, s.span.line_end);
        entry.stmt.node = entries_.size();
        entry.file = file_idx;
        entry.arena = arena;
        entry.func = func_idx;
        entry.parent_entry = parent_entry;
        entry.pos = pos;
        entries_.push_back(std::move(entry));
        return static_cast<int>(entries_.size() - 1);
    }

    void visit_list(const ParsedFile& file, int file_idx, int func_idx,
                    const std::vector<int>& stmts, const std::string& base_path, int parent_entry) {
        std::vector<int> created;
        for (std::size_t i = 0; i < stmts.size(); ++i) {
            std::string path = base_path + "/" + std::to_string(i);
            created.push_back(visit_stmt(file, file_idx, func_idx, stmts[i], path, parent_entry,
                                         static_cast<int>(i)));
        }
        for (std::size_t i = 0; i < created.size(); ++i) {
            if (i > 0) entries_[static_cast<std::size_t>(created[i])].sibling_prev = created[i - 1];
            if (i + 1 < created.size()) {
                entries_[static_cast<std::size_t>(created[i])].sibling_next = created[i + 1];
            }
        }
    }

    int visit_stmt(const ParsedFile& file, int file_idx, int func_idx, int arena,
                   const std::string& path, int parent_entry, int pos) {
        int entry = add_entry(file, file_idx, func_idx, arena, path, parent_entry, pos);
        const Stmt& s = file.stmt(arena);
        if (s.kind == Stmt::Kind::If) {
            visit_block(file, file_idx, func_idx, s.then_block, path + "/then", entry);
            if (s.else_block >= 0) {
                visit_block(file, file_idx, func_idx, s.else_block, path + "/else", entry);
            }
        } else if (s.kind == Stmt::Kind::While) {
            visit_block(file, file_idx, func_idx, s.body_block, path + "/body", entry);
        }
        return entry;
    }

    void visit_block(const ParsedFile& file, int file_idx, int func_idx, int arena,
                     const std::string& path, int parent_entry) {
        int entry = add_entry(file, file_idx, func_idx, arena, path, parent_entry, -1);
        visit_list(file, file_idx, func_idx, file.stmt(arena).children, path, entry);
    }

        MiniSnapshot& snap_;
        std::vector<StmtEntry> entries_;
        std::map<std::string, int> by_id_;
    };
};

SnapshotPtr MiniLangAdapter::load(const std::filesystem::path& root) const {
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
    return from_files(std::move(files));
}

SnapshotPtr MiniLangAdapter::from_files(FileMap files) const {
    return MiniSnapshotBuilder::build(std::move(files));
}

std::vector<Statement> MiniLangAdapter::enumerate_statements(const Snapshot& snapshot) const {
    const MiniSnapshot& mini = as_mini(snapshot);
    if (!mini.parse_ok()) {
        throw ParseError(mini.parse_diagnostic().message);
    }
    std::vector<Statement> stmts;
    stmts.reserve(mini.entries().size());
    for (const auto& entry : mini.entries()) stmts.push_back(entry.stmt);
    return stmts;
}

namespace {

struct ByteEdit {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
};

std::size_t line_start_at(const std::string& source, std::size_t pos) {
    while (pos > 0 && source[pos - 1] != '\n') --pos;
    return pos;
}

std::size_t line_end_after(const std::string& source, std::size_t pos) {
    while (pos < source.size() && source[pos] != '\n') ++pos;
    return pos < source.size() ? pos + 1 : pos;
}

} // namespace

SnapshotPtr MiniLangAdapter::render(const Snapshot& snapshot,
                                    const std::vector<StatementEdit>& edits) const {
    const MiniSnapshot& mini = as_mini(snapshot);
    if (!mini.parse_ok()) throw ParseError(mini.parse_diagnostic().message);

    std::map<std::string, std::vector<ByteEdit>> by_file;
    std::vector<std::string> seen;
    for (const auto& edit : edits) {
        std::string key = edit.target.str();
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            throw ConflictingEdits("two edits target statement " + key);
        }
        seen.push_back(key);

        const StmtEntry* entry = mini.find(edit.target);
        if (!entry) throw AdapterFailure("unknown statement " + key);
        const ParsedFile& file = mini.file_of(*entry);
        const Span& span = file.stmt(entry->arena).span;

        ByteEdit be;
        switch (edit.action) {
        case StatementEdit::Action::Replace:
            be = {span.begin, span.end, edit.text};
            break;
        case StatementEdit::Action::Delete:
            be = {line_start_at(file.source, span.begin), line_end_after(file.source, span.end), ""};
            break;
        case StatementEdit::Action::InsertBefore:
            be = {line_start_at(file.source, span.begin), line_start_at(file.source, span.begin),
                  edit.text};
            break;
        }
        by_file[file.path].push_back(std::move(be));
    }

    FileMap files = mini.files();
    for (auto& [path, byte_edits] : by_file) {
        std::sort(byte_edits.begin(), byte_edits.end(),
                  [](const ByteEdit& a, const ByteEdit& b) { return a.begin < b.begin; });
        for (std::size_t i = 1; i < byte_edits.size(); ++i) {
            if (byte_edits[i].begin < byte_edits[i - 1].end) {
                throw ConflictingEdits("overlapping edits in " + path);
            }
        }
        std::string& content = files[path];
        for (auto it = byte_edits.rbegin(); it != byte_edits.rend(); ++it) {
            content.replace(it->begin, it->end - it->begin, it->text);
        }
    }
    return from_files(std::move(files));
}

CompileOutcome MiniLangAdapter::compile(const Snapshot& snapshot) const {
    const MiniSnapshot& mini = as_mini(snapshot);
    if (!mini.parse_ok()) {
        CompileOutcome outcome;
        outcome.ok = false;
        outcome.diagnostics.push_back(mini.parse_diagnostic());
        return outcome;
    }
    return check_program(mini.parsed());
}

TestRunOutcome MiniLangAdapter::run_tests(const Snapshot& snapshot,
                                          std::chrono::milliseconds suite_timeout) const {
    const MiniSnapshot& mini = as_mini(snapshot);
    if (!mini.parse_ok()) throw AdapterFailure("cannot run tests: " + mini.parse_diagnostic().message);
    if (suite_timeout.count() <= 0) suite_timeout = default_timeout();
    return run_suite(mini.parsed(), suite_timeout);
}

const RuleCatalog& MiniLangAdapter::catalog() const {
    return minilang_catalog();
}

FileMap MiniLangAdapter::attach_test(FileMap files, const TestSpec& test,
                                     const std::string& blob) const {
    files["tests/" + test.name + ".ml"] = blob;
    return files;
}

} // namespace pbc::minilang
