#include "pbc/minilang/adapter.hpp"
#include "pbc/minilang/check.hpp"
#include "pbc/util.hpp"

#include <algorithm>
#include <map>

namespace pbc::minilang {
namespace {

// A byte-range rewrite in file coordinates, confined to one statement.
struct Patch {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::string text;
};

struct Option {
    std::vector<Patch> patches;          // within-statement rules
    std::vector<StatementEdit> edits;    // structural rules build edits directly
    std::string description;
};

std::string apply_patches(const ParsedFile& file, const Span& span, std::vector<Patch> patches) {
    std::sort(patches.begin(), patches.end(),
              [](const Patch& a, const Patch& b) { return a.begin > b.begin; });
    std::string text = file.text(span);
    for (const auto& p : patches) {
        text.replace(p.begin - span.begin, p.end - p.begin, p.text);
    }
    return text;
}

StatementEdit replace_edit(const StmtEntry& entry, std::string text) {
    StatementEdit edit;
    edit.target = entry.stmt.id;
    edit.action = StatementEdit::Action::Replace;
    edit.text = std::move(text);
    return edit;
}

Option patch_option(const ParsedFile& file, const StmtEntry& entry, std::vector<Patch> patches,
                    std::string description) {
    Option opt;
    opt.edits.push_back(
        replace_edit(entry, apply_patches(file, file.stmt(entry.arena).span, patches)));
    opt.patches = std::move(patches);
    opt.description = std::move(description);
    return opt;
}

std::string indent_at(const std::string& source, std::size_t pos) {
    std::size_t start = pos;
    while (start > 0 && source[start - 1] != '\n') --start;
    std::string indent;
    while (start < source.size() && (source[start] == ' ' || source[start] == '\t')) {
        indent += source[start++];
    }
    return indent;
}

// Expression indices reachable from a statement's own expressions (not its
// nested block statements).
std::vector<int> stmt_exprs(const ParsedFile& file, const Stmt& s) {
    std::vector<int> roots;
    if (s.value >= 0) roots.push_back(s.value);
    if (s.cond >= 0) roots.push_back(s.cond);
    std::vector<int> out;
    std::vector<int> work(roots.rbegin(), roots.rend());
    while (!work.empty()) {
        int idx = work.back();
        work.pop_back();
        out.push_back(idx);
        const Expr& e = file.expr(idx);
        for (auto it = e.args.rbegin(); it != e.args.rend(); ++it) work.push_back(*it);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return file.expr(a).span.begin < file.expr(b).span.begin;
    });
    return out;
}

const std::vector<std::string>& operator_family(const Expr& e) {
    static const std::vector<std::string> arith{"+", "-", "*", "/", "%"};
    static const std::vector<std::string> cmp{"<", "<=", ">", ">=", "==", "!="};
    static const std::vector<std::string> logic{"&&", "||"};
    static const std::vector<std::string> unary{"!", "-"};
    static const std::vector<std::string> none{};
    if (e.kind == Expr::Kind::Unary) return unary;
    for (const auto* family : {&arith, &cmp, &logic}) {
        if (std::find(family->begin(), family->end(), e.op) != family->end()) return *family;
    }
    return none;
}

std::vector<std::string> token_multiset(const ParsedFile& file, const Span& span) {
    std::vector<std::string> toks;
    for (const auto& t : file.tokens) {
        if (t.begin >= span.begin && t.end <= span.end && t.kind != TokKind::Eof) {
            toks.push_back(t.text);
        }
    }
    return toks;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::map<std::string, int> ca;
    std::map<std::string, int> cb;
    for (const auto& t : a) ++ca[t];
    for (const auto& t : b) ++cb[t];
    long inter = 0;
    long uni = 0;
    for (const auto& [tok, n] : ca) {
        auto it = cb.find(tok);
        int m = it == cb.end() ? 0 : it->second;
        inter += std::min(n, m);
        uni += std::max(n, m);
    }
    for (const auto& [tok, n] : cb) {
        if (!ca.count(tok)) uni += n;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Nearest boolean variable visible at the entry, scanning declarations
// backwards through enclosing statement lists, then parameters.
std::string nearest_bool_var(const MiniSnapshot& snap, int entry_idx) {
    const auto& entries = snap.entries();
    int cur = entry_idx;
    while (cur >= 0) {
        const StmtEntry& e = entries[static_cast<std::size_t>(cur)];
        int prev = e.sibling_prev;
        while (prev >= 0) {
            const StmtEntry& p = entries[static_cast<std::size_t>(prev)];
            const Stmt& s = snap.file_of(p).stmt(p.arena);
            if (s.kind == Stmt::Kind::Decl && s.decl_type == Type::Bool) return s.name;
            prev = p.sibling_prev;
        }
        cur = e.parent_entry;
    }
    const StmtEntry& e = entries[static_cast<std::size_t>(entry_idx)];
    const Function& fn = snap.file_of(e).functions[static_cast<std::size_t>(e.func)];
    for (auto it = fn.params.rbegin(); it != fn.params.rend(); ++it) {
        if (it->type == Type::Bool) return it->name;
    }
    return "";
}

bool is_wrappable(const Stmt& s) {
    switch (s.kind) {
    case Stmt::Kind::Decl:
    case Stmt::Kind::Assign:
    case Stmt::Kind::CallStmt:
    case Stmt::Kind::Assert:
    case Stmt::Kind::If:
    case Stmt::Kind::While:
        return true;
    case Stmt::Kind::Return:
        return s.value >= 0; // skipping a bare return never changes behavior
    case Stmt::Kind::Block:
        return false;
    }
    return false;
}

// ---- per-rule rewrite universes ------------------------------------------

std::vector<Option> universe_r1(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    if (s.kind != Stmt::Kind::Decl) return {};
    static const std::map<Type, const char*> next{
        {Type::Int, "bool"}, {Type::Bool, "str"}, {Type::Str, "int"}};
    const Token& tok = file.tokens[s.type_tok];
    std::string replacement = next.at(s.decl_type);
    return {patch_option(file, entry, {{tok.begin, tok.end, replacement}},
                         tok.text + " -> " + replacement)};
}

std::vector<Option> universe_r2(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    std::vector<Option> out;
    for (int idx : stmt_exprs(file, s)) {
        const Expr& e = file.expr(idx);
        if (e.kind != Expr::Kind::Binary && e.kind != Expr::Kind::Unary) continue;
        const auto& family = operator_family(e);
        const Token& tok = file.tokens[e.op_tok];
        for (const auto& alt : family) {
            if (alt == e.op) continue;
            out.push_back(patch_option(file, entry, {{tok.begin, tok.end, alt}},
                                       e.op + " -> " + alt));
        }
    }
    return out;
}

std::vector<Option> universe_r3(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    std::vector<Option> out;
    for (int idx : stmt_exprs(file, s)) {
        const Expr& e = file.expr(idx);
        const Token& tok = file.tokens[e.op_tok];
        if (e.kind == Expr::Kind::IntLit) {
            std::vector<long long> alts{e.int_value + 1, e.int_value - 1, 0};
            std::vector<std::string> seen;
            for (long long v : alts) {
                if (v == e.int_value) continue;
                std::string text = std::to_string(v);
                if (std::find(seen.begin(), seen.end(), text) != seen.end()) continue;
                seen.push_back(text);
                out.push_back(patch_option(file, entry, {{tok.begin, tok.end, text}},
                                           tok.text + " -> " + text));
            }
        } else if (e.kind == Expr::Kind::BoolLit) {
            std::string text = e.bool_value ? "false" : "true";
            out.push_back(
                patch_option(file, entry, {{tok.begin, tok.end, text}}, tok.text + " -> " + text));
        } else if (e.kind == Expr::Kind::StrLit) {
            if (tok.text != "\"\"") {
                out.push_back(patch_option(file, entry, {{tok.begin, tok.end, "\"\""}},
                                           tok.text + " -> \"\""));
            }
        }
    }
    return out;
}

std::vector<Option> universe_r5(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    std::vector<Option> out;
    for (int idx : stmt_exprs(file, s)) {
        const Expr& e = file.expr(idx);
        if (e.kind != Expr::Kind::Call || e.args.size() < 2) continue;
        const Span& a0 = file.expr(e.args[0]).span;
        const Span& a1 = file.expr(e.args[1]).span;
        std::string t0 = file.text(a0);
        std::string t1 = file.text(a1);
        if (t0 == t1) continue;
        out.push_back(patch_option(file, entry, {{a0.begin, a0.end, t1}, {a1.begin, a1.end, t0}},
                                   "swap arguments of " + e.name));
    }
    return out;
}

// The expression a boolean-expression rewrite targets, if any.
int r6_target(const ParsedFile& file, const Stmt& s) {
    switch (s.kind) {
    case Stmt::Kind::If:
    case Stmt::Kind::While:
        return s.cond;
    case Stmt::Kind::Assert:
        return s.value;
    case Stmt::Kind::Decl:
        return s.decl_type == Type::Bool ? s.value : -1;
    case Stmt::Kind::Assign: {
        if (s.value < 0) return -1;
        const Expr& root = file.expr(s.value);
        if (root.kind == Expr::Kind::Unary && root.op == "!") return s.value;
        if (root.kind == Expr::Kind::Binary) {
            static const std::vector<std::string> boolish{"<", "<=", ">", ">=",
                                                          "==", "!=", "&&", "||"};
            if (std::find(boolish.begin(), boolish.end(), root.op) != boolish.end()) {
                return s.value;
            }
        }
        return -1;
    }
    default:
        return -1;
    }
}

std::vector<Option> universe_r6(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    int target = r6_target(file, s);
    if (target < 0) return {};
    const Expr& e = file.expr(target);
    std::string text = file.text(e.span);
    std::vector<Option> out;
    out.push_back(patch_option(file, entry, {{e.span.begin, e.span.end, "!(" + text + ")"}},
                               "negate " + text));
    if (e.kind == Expr::Kind::Binary && (e.op == "&&" || e.op == "||")) {
        out.push_back(patch_option(
            file, entry, {{e.span.begin, e.span.end, file.text(file.expr(e.args[1]).span)}},
            "drop left operand of " + e.op));
        out.push_back(patch_option(
            file, entry, {{e.span.begin, e.span.end, file.text(file.expr(e.args[0]).span)}},
            "drop right operand of " + e.op));
    }
    return out;
}

std::vector<Option> universe_r7(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);

    // Callee candidates: user-defined non-test functions, project-wide.
    std::vector<std::pair<std::string, std::size_t>> fns; // name, arity
    for (const auto& pf : snap.parsed()) {
        for (const auto& fn : pf.functions) {
            if (fn.name.rfind("test_", 0) == 0) continue;
            fns.emplace_back(fn.name, fn.params.size());
        }
    }
    std::vector<Option> out;
    for (int idx : stmt_exprs(file, s)) {
        const Expr& e = file.expr(idx);
        if (e.kind != Expr::Kind::Call) continue;
        const Token& tok = file.tokens[e.op_tok];
        for (const auto& [name, arity] : fns) {
            if (name == e.name || arity != e.args.size()) continue;
            out.push_back(patch_option(file, entry, {{tok.begin, tok.end, name}},
                                       e.name + " -> " + name));
        }
    }
    return out;
}

std::vector<Option> universe_r8(const MiniSnapshot& snap, const StmtEntry& entry,
                                std::uint64_t seed) {
    // Composes the two lowest-id applicable token-level rules (declaring
    // type, operator, literal); their patches touch distinct tokens.
    const ParsedFile& file = snap.file_of(entry);
    std::vector<std::pair<int, std::vector<Option>>> pools;
    for (int id : {1, 2, 3}) {
        std::vector<Option> u = id == 1   ? universe_r1(snap, entry)
                                : id == 2 ? universe_r2(snap, entry)
                                          : universe_r3(snap, entry);
        if (!u.empty()) pools.emplace_back(id, std::move(u));
        if (pools.size() == 2) break;
    }
    if (pools.size() < 2) return {};

    auto pick = [&](const std::vector<Option>& u, std::uint64_t s) -> const Option& {
        util::Rng rng(util::mix64(s));
        return u[rng.pick(u.size())];
    };
    const Option& a = pick(pools[0].second, seed ^ 0xa);
    const Option& b = pick(pools[1].second, seed ^ 0xb);

    std::vector<Patch> patches = a.patches;
    patches.insert(patches.end(), b.patches.begin(), b.patches.end());
    Option opt = patch_option(file, entry, std::move(patches),
                              a.description + "; " + b.description);
    return {std::move(opt)};
}

// Most similar other statement in the same file; threshold applies for the
// replacement rule, any overlap (> 0) suffices for insertion. Replacement
// skips statements whose text already equals the target.
const StmtEntry* most_similar(const MiniSnapshot& snap, const StmtEntry& entry, double threshold,
                              bool allow_identical) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    auto target_toks = token_multiset(file, s.span);
    std::string target_text = file.text(s.span);
    int self = static_cast<int>(entry.stmt.node);

    const StmtEntry* best = nullptr;
    double best_score = 0;
    for (const auto& other : snap.entries()) {
        int other_idx = static_cast<int>(other.stmt.node);
        if (other_idx == self || other.file != entry.file) continue;
        if (other.stmt.kind == StmtKind::Block) continue;
        if (snap.is_ancestor(self, other_idx) || snap.is_ancestor(other_idx, self)) continue;
        if (!allow_identical && file.text(file.stmt(other.arena).span) == target_text) continue;
        double score = jaccard(target_toks, token_multiset(file, file.stmt(other.arena).span));
        if (score < threshold || score <= 0) continue;
        if (!best || score > best_score) {
            best = &other;
            best_score = score;
        }
    }
    return best;
}

std::vector<Option> universe_r9(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind == StmtKind::Block) return {};
    const ParsedFile& file = snap.file_of(entry);
    const StmtEntry* best = most_similar(snap, entry, 0.4, false);
    if (!best) return {};
    Option opt;
    opt.edits.push_back(replace_edit(entry, file.text(file.stmt(best->arena).span)));
    opt.description = "replace with statement at line " +
                      std::to_string(file.stmt(best->arena).span.line_begin);
    return {std::move(opt)};
}

std::vector<Option> universe_r10(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.pos < 0) return {};
    int neighbor_idx = entry.sibling_next >= 0 ? entry.sibling_next : entry.sibling_prev;
    if (neighbor_idx < 0) return {};
    const StmtEntry& neighbor = snap.entries()[static_cast<std::size_t>(neighbor_idx)];
    const ParsedFile& file = snap.file_of(entry);
    std::string own = file.text(file.stmt(entry.arena).span);
    std::string other = file.text(file.stmt(neighbor.arena).span);
    if (own == other) return {};
    Option opt;
    opt.edits.push_back(replace_edit(entry, other));
    opt.edits.push_back(replace_edit(neighbor, own));
    opt.description = entry.sibling_next >= 0 ? "move one position later" : "move one position earlier";
    return {std::move(opt)};
}

std::vector<Option> universe_r11(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind == StmtKind::Block || entry.pos < 0) return {};
    const StmtEntry* best = most_similar(snap, entry, 0.0, true);
    if (!best) return {};
    const ParsedFile& file = snap.file_of(entry);
    const Span& span = file.stmt(entry.arena).span;
    std::string indent = indent_at(file.source, span.begin);
    auto lines = util::Lines::split(file.text(file.stmt(best->arena).span)).lines;
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        text += (i == 0 ? indent : "") + lines[i] + "\n";
    }
    StatementEdit edit;
    edit.target = entry.stmt.id;
    edit.action = StatementEdit::Action::InsertBefore;
    edit.text = std::move(text);
    Option opt;
    opt.edits.push_back(std::move(edit));
    opt.description = "insert copy of statement at line " +
                      std::to_string(file.stmt(best->arena).span.line_begin);
    return {std::move(opt)};
}

std::vector<Option> universe_r12(const MiniSnapshot& snap, const StmtEntry& entry) {
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    if (!is_wrappable(s)) return {};
    std::string guard = nearest_bool_var(snap, static_cast<int>(entry.stmt.node));
    if (guard.empty()) guard = "!true";
    std::string indent = indent_at(file.source, s.span.begin);
    auto lines = util::Lines::split(file.text(s.span)).lines;
    std::string text = "if (" + guard + ") {\n";
    for (std::size_t i = 0; i < lines.size(); ++i) {
        text += (i == 0 ? indent + "    " : "    ") + lines[i] + "\n";
    }
    text += indent + "}";
    Option opt;
    opt.edits.push_back(replace_edit(entry, std::move(text)));
    opt.description = "wrap in if (" + guard + ")";
    return {std::move(opt)};
}

std::string default_return(Type t) {
    switch (t) {
    case Type::Int: return "return 0;";
    case Type::Bool: return "return false;";
    case Type::Str: return "return \"\";";
    case Type::Void: return "return;";
    }
    return "return;";
}

std::vector<Option> universe_r13(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind != StmtKind::Block) return {};
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& block = file.stmt(entry.arena);
    const Function& fn = file.functions[static_cast<std::size_t>(entry.func)];

    std::string guard = nearest_bool_var(snap, static_cast<int>(entry.stmt.node));
    if (guard.empty()) guard = "true";

    std::string orig = file.text(block.span);
    std::string close_indent = indent_at(file.source, file.tokens[block.close_brace_tok].begin);
    std::string child_indent = close_indent + "    ";
    if (!block.children.empty()) {
        const Stmt& first = file.stmt(block.children.front());
        child_indent = indent_at(file.source, first.span.begin);
    }
    std::string guard_text = child_indent + "if (" + guard + ") {\n" + child_indent + "    " +
                             default_return(fn.return_type) + "\n" + child_indent + "}\n";
    std::string text;
    auto nl = orig.find('\n');
    if (nl == std::string::npos) {
        text = "{\n" + guard_text + close_indent + "}";
    } else {
        text = orig.substr(0, nl + 1) + guard_text + orig.substr(nl + 1);
    }
    Option opt;
    opt.edits.push_back(replace_edit(entry, std::move(text)));
    opt.description = "guard block with if (" + guard + ")";
    return {std::move(opt)};
}

std::vector<Option> universe_r14(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind != StmtKind::Block) return {};
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& block = file.stmt(entry.arena);
    if (block.children.empty()) return {};
    std::string close_indent = indent_at(file.source, file.tokens[block.close_brace_tok].begin);
    Option opt;
    opt.edits.push_back(replace_edit(entry, "{\n" + close_indent + "}"));
    opt.description = "empty block body";
    return {std::move(opt)};
}

std::vector<Option> universe_r15(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind != StmtKind::If && entry.stmt.kind != StmtKind::While) return {};
    const ParsedFile& file = snap.file_of(entry);
    const Stmt& s = file.stmt(entry.arena);
    const Stmt& block = file.stmt(s.kind == Stmt::Kind::If ? s.then_block : s.body_block);

    // Interior lines strictly between the brace lines.
    int first_line = block.span.line_begin + 1;
    int last_line = block.span.line_end - 1;
    if (first_line > last_line) return {};

    auto lines = util::Lines::split(file.source).lines;
    std::string text;
    for (int ln = first_line; ln <= last_line; ++ln) {
        std::string line = lines[static_cast<std::size_t>(ln - 1)];
        if (ln == first_line) {
            std::size_t ws = line.find_first_not_of(" \t");
            line = ws == std::string::npos ? "" : line.substr(ws);
        }
        text += line;
        if (ln != last_line) text += "\n";
    }
    Option opt;
    opt.edits.push_back(replace_edit(entry, std::move(text)));
    opt.description = "unwrap body";
    return {std::move(opt)};
}

std::vector<Option> universe_r16(const MiniSnapshot& snap, const StmtEntry& entry) {
    if (entry.stmt.kind != StmtKind::If && entry.stmt.kind != StmtKind::While) return {};
    (void)snap;
    StatementEdit edit;
    edit.target = entry.stmt.id;
    edit.action = StatementEdit::Action::Delete;
    Option opt;
    opt.edits.push_back(std::move(edit));
    opt.description = "remove construct";
    return {std::move(opt)};
}

std::vector<Option> universe(const MiniSnapshot& snap, const StmtEntry& entry, int rule_id,
                             std::uint64_t seed) {
    switch (rule_id) {
    case 1: return universe_r1(snap, entry);
    case 2: return universe_r2(snap, entry);
    case 3: return universe_r3(snap, entry);
    case 4: return {}; // constructors exist only in external-adapter targets
    case 5: return universe_r5(snap, entry);
    case 6: return universe_r6(snap, entry);
    case 7: return universe_r7(snap, entry);
    case 8: return universe_r8(snap, entry, seed);
    case 9: return universe_r9(snap, entry);
    case 10: return universe_r10(snap, entry);
    case 11: return universe_r11(snap, entry);
    case 12: return universe_r12(snap, entry);
    case 13: return universe_r13(snap, entry);
    case 14: return universe_r14(snap, entry);
    case 15: return universe_r15(snap, entry);
    case 16: return universe_r16(snap, entry);
    default: return {};
    }
}

class MiniRuleCatalog : public RuleCatalog {
public:
    std::vector<InjectionRule> applicable(const Snapshot& snapshot,
                                          const Statement& stmt) const override {
        const MiniSnapshot& mini = as_mini(snapshot);
        const StmtEntry* entry = mini.find(stmt.id);
        if (!entry) return {};
        std::vector<InjectionRule> rules;
        for (int id = 1; id <= 16; ++id) {
            if (!universe(mini, *entry, id, 0).empty()) rules.push_back(rule_by_id(id));
        }
        return rules;
    }

    std::vector<MutantCandidate> candidates(const Snapshot& snapshot, const Statement& stmt,
                                            const InjectionRule& rule, std::uint64_t seed,
                                            int cap) const override {
        const MiniSnapshot& mini = as_mini(snapshot);
        const StmtEntry* entry = mini.find(stmt.id);
        if (!entry || cap <= 0) return {};
        std::vector<Option> options = universe(mini, *entry, rule.id, seed);

        // Seeded order, then truncate.
        util::Rng rng(util::mix64(seed ^ static_cast<std::uint64_t>(rule.id)));
        for (std::size_t i = options.size(); i > 1; --i) {
            std::swap(options[i - 1], options[rng.pick(i)]);
        }
        if (options.size() > static_cast<std::size_t>(cap)) {
            options.resize(static_cast<std::size_t>(cap));
        }

        std::vector<MutantCandidate> result;
        for (auto& opt : options) {
            MutantCandidate cand;
            cand.statement_id = stmt.id;
            cand.rule_id = rule.id;
            cand.seed = seed;
            cand.edits = std::move(opt.edits);
            cand.description = std::move(opt.description);
            result.push_back(std::move(cand));
        }
        return result;
    }
};

} // namespace

const RuleCatalog& minilang_catalog() {
    static const MiniRuleCatalog catalog;
    return catalog;
}

} // namespace pbc::minilang
