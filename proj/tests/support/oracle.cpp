#include "oracle.hpp"

#include "pbc/minilang/parser.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace testsupport {
namespace {

using namespace pbc::minilang;

// One flattened statement with everything the matrix needs.
struct FlatStmt {
    const ParsedFile* file = nullptr;
    const Stmt* stmt = nullptr;
    int index = 0;         // preorder position across the project
    int parent = -1;       // preorder index of the enclosing block/if/while
    int prev_sibling = -1;
    int next_sibling = -1;
    bool in_sibling_list = false; // false for blocks attached to if/while
    Type function_return = Type::Void;
    bool bool_var_visible = false; // any bool declaration/parameter in scope
};

struct Walker {
    std::vector<FlatStmt> out;

    void file_stmts(const ParsedFile& file) {
        for (const auto& fn : file.functions) {
            list(file, fn, fn.body, -1);
        }
    }

    void list(const ParsedFile& file, const Function& fn, const std::vector<int>& stmts,
              int parent) {
        std::vector<int> indices;
        for (int s : stmts) {
            indices.push_back(one(file, fn, file.stmt(s), parent, true));
        }
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i > 0) out[indices[i]].prev_sibling = indices[i - 1];
            if (i + 1 < indices.size()) out[indices[i]].next_sibling = indices[i + 1];
        }
    }

    int one(const ParsedFile& file, const Function& fn, const Stmt& s, int parent,
            bool in_list) {
        FlatStmt flat;
        flat.file = &file;
        flat.stmt = &s;
        flat.index = static_cast<int>(out.size());
        flat.parent = parent;
        flat.in_sibling_list = in_list;
        flat.function_return = fn.return_type;
        out.push_back(flat);
        int self = flat.index;
        if (s.kind == Stmt::Kind::If) {
            block(file, fn, file.stmt(s.then_block), self);
            if (s.else_block >= 0) block(file, fn, file.stmt(s.else_block), self);
        } else if (s.kind == Stmt::Kind::While) {
            block(file, fn, file.stmt(s.body_block), self);
        }
        return self;
    }

    void block(const ParsedFile& file, const Function& fn, const Stmt& b, int parent) {
        int self = one(file, fn, b, parent, false);
        list(file, fn, b.children, self);
    }
};

std::vector<int> exprs_of(const ParsedFile& file, const Stmt& s) {
    std::vector<int> roots;
    if (s.value >= 0) roots.push_back(s.value);
    if (s.cond >= 0) roots.push_back(s.cond);
    std::vector<int> all;
    while (!roots.empty()) {
        int e = roots.back();
        roots.pop_back();
        all.push_back(e);
        for (int a : file.expr(e).args) roots.push_back(a);
    }
    return all;
}

bool has_operator(const ParsedFile& file, const Stmt& s) {
    for (int e : exprs_of(file, s)) {
        auto kind = file.expr(e).kind;
        if (kind == Expr::Kind::Binary || kind == Expr::Kind::Unary) return true;
    }
    return false;
}

bool has_mutable_literal(const ParsedFile& file, const Stmt& s) {
    for (int e : exprs_of(file, s)) {
        const Expr& expr = file.expr(e);
        if (expr.kind == Expr::Kind::IntLit || expr.kind == Expr::Kind::BoolLit) return true;
        if (expr.kind == Expr::Kind::StrLit && !expr.str_value.empty()) return true;
    }
    return false;
}

bool has_swappable_call(const ParsedFile& file, const Stmt& s) {
    for (int e : exprs_of(file, s)) {
        const Expr& expr = file.expr(e);
        if (expr.kind != Expr::Kind::Call || expr.args.size() < 2) continue;
        if (file.text(file.expr(expr.args[0]).span) != file.text(file.expr(expr.args[1]).span)) {
            return true;
        }
    }
    return false;
}

bool is_boolish_root(const ParsedFile& file, int expr) {
    const Expr& e = file.expr(expr);
    if (e.kind == Expr::Kind::Unary && e.op == "!") return true;
    if (e.kind != Expr::Kind::Binary) return false;
    static const std::set<std::string> ops{"<", "<=", ">", ">=", "==", "!=", "&&", "||"};
    return ops.count(e.op) > 0;
}

bool boolean_expression_target(const ParsedFile& file, const Stmt& s) {
    switch (s.kind) {
    case Stmt::Kind::If:
    case Stmt::Kind::While:
        return true;
    case Stmt::Kind::Assert:
        return true;
    case Stmt::Kind::Decl:
        return s.decl_type == Type::Bool && s.value >= 0;
    case Stmt::Kind::Assign:
        return s.value >= 0 && is_boolish_root(file, s.value);
    default:
        return false;
    }
}

bool has_replaceable_callee(const std::vector<ParsedFile>& files, const ParsedFile& file,
                            const Stmt& s) {
    std::vector<std::pair<std::string, std::size_t>> fns;
    for (const auto& pf : files) {
        for (const auto& fn : pf.functions) {
            if (fn.name.rfind("test_", 0) != 0) fns.emplace_back(fn.name, fn.params.size());
        }
    }
    for (int e : exprs_of(file, s)) {
        const Expr& expr = file.expr(e);
        if (expr.kind != Expr::Kind::Call) continue;
        for (const auto& [name, arity] : fns) {
            if (name != expr.name && arity == expr.args.size()) return true;
        }
    }
    return false;
}

std::map<std::string, int> token_counts(const ParsedFile& file, const Span& span) {
    std::map<std::string, int> counts;
    for (const auto& tok : file.tokens) {
        if (tok.begin >= span.begin && tok.end <= span.end && tok.kind != TokKind::Eof) {
            ++counts[tok.text];
        }
    }
    return counts;
}

double jaccard(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
    long inter = 0;
    long uni = 0;
    for (const auto& [tok, n] : a) {
        auto it = b.find(tok);
        inter += std::min(n, it == b.end() ? 0 : it->second);
        uni += std::max(n, it == b.end() ? 0 : it->second);
    }
    for (const auto& [tok, n] : b) {
        if (!a.count(tok)) uni += n;
    }
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

bool nested(const std::vector<FlatStmt>& all, int a, int b) {
    for (int cur = all[b].parent; cur >= 0; cur = all[cur].parent) {
        if (cur == a) return true;
    }
    for (int cur = all[a].parent; cur >= 0; cur = all[cur].parent) {
        if (cur == b) return true;
    }
    return false;
}

// Best similarity against any other non-block, non-nested statement in the
// same file (text must differ for match_identical=false).
double best_similarity(const std::vector<FlatStmt>& all, int self, bool allow_identical) {
    const FlatStmt& target = all[self];
    auto target_counts = token_counts(*target.file, target.stmt->span);
    double best = -1;
    for (const auto& other : all) {
        if (other.index == self || other.file != target.file) continue;
        if (other.stmt->kind == Stmt::Kind::Block) continue;
        if (nested(all, self, other.index)) continue;
        if (!allow_identical &&
            target.file->text(other.stmt->span) == target.file->text(target.stmt->span)) {
            continue;
        }
        best = std::max(best, jaccard(target_counts, token_counts(*other.file, other.stmt->span)));
    }
    return best;
}

bool wrappable(const Stmt& s) {
    switch (s.kind) {
    case Stmt::Kind::Decl:
    case Stmt::Kind::Assign:
    case Stmt::Kind::CallStmt:
    case Stmt::Kind::Assert:
    case Stmt::Kind::If:
    case Stmt::Kind::While:
        return true;
    case Stmt::Kind::Return:
        return s.value >= 0;
    default:
        return false;
    }
}

bool block_has_interior_lines(const ParsedFile& file, const Stmt& construct) {
    const Stmt& block = file.stmt(construct.kind == Stmt::Kind::If ? construct.then_block
                                                                   : construct.body_block);
    return block.span.line_end - block.span.line_begin >= 2;
}

} // namespace

OracleCounts oracle_enumerate(const std::filesystem::path& project_dir) {
    std::vector<ParsedFile> files;
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(project_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".ml") {
            paths.push_back(entry.path());
        }
    }
    std::sort(paths.begin(), paths.end());

    std::vector<ParsedFile> mutable_files; // non-test files, walked for statements
    for (const auto& path : paths) {
        auto rel = std::filesystem::relative(path, project_dir).generic_string();
        files.push_back(parse_file(rel, pbc::util::read_file(path)));
    }

    Walker walker;
    for (const auto& file : files) {
        if (file.path.rfind("tests/", 0) != 0) walker.file_stmts(file);
    }
    const auto& all = walker.out;

    OracleCounts counts;
    counts.statements = all.size();

    for (const auto& flat : all) {
        const ParsedFile& file = *flat.file;
        const Stmt& s = *flat.stmt;
        std::set<int> applicable;

        bool is_block = s.kind == Stmt::Kind::Block;
        bool is_construct = s.kind == Stmt::Kind::If || s.kind == Stmt::Kind::While;

        if (s.kind == Stmt::Kind::Decl) applicable.insert(1);
        if (!is_block && has_operator(file, s)) applicable.insert(2);
        if (!is_block && has_mutable_literal(file, s)) applicable.insert(3);
        // Rule 4 (constructors) never applies to this target language.
        if (!is_block && has_swappable_call(file, s)) applicable.insert(5);
        if (boolean_expression_target(file, s)) applicable.insert(6);
        if (!is_block && has_replaceable_callee(files, file, s)) applicable.insert(7);
        int token_rules = (applicable.count(1) ? 1 : 0) + (applicable.count(2) ? 1 : 0) +
                          (applicable.count(3) ? 1 : 0);
        if (token_rules >= 2) applicable.insert(8);
        if (!is_block && best_similarity(all, flat.index, false) >= 0.4) applicable.insert(9);
        if (flat.in_sibling_list) {
            int neighbor = flat.next_sibling >= 0 ? flat.next_sibling : flat.prev_sibling;
            if (neighbor >= 0 &&
                file.text(all[neighbor].stmt->span) != file.text(s.span)) {
                applicable.insert(10);
            }
            if (!is_block && best_similarity(all, flat.index, true) > 0) applicable.insert(11);
        }
        if (wrappable(s)) applicable.insert(12);
        if (is_block) applicable.insert(13);
        if (is_block && !s.children.empty()) applicable.insert(14);
        if (is_construct && block_has_interior_lines(file, s)) applicable.insert(15);
        if (is_construct) applicable.insert(16);

        for (int rule : applicable) {
            ++counts.per_rule[rule];
            ++counts.pairs;
        }
    }
    return counts;
}

} // namespace testsupport
