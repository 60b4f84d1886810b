#include "pbc/minilang/check.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace pbc::minilang {

std::string to_string(Type type) {
    switch (type) {
    case Type::Int: return "int";
    case Type::Bool: return "bool";
    case Type::Str: return "str";
    case Type::Void: return "void";
    }
    return "int";
}

const std::vector<BuiltinFn>& builtins() {
    static const std::vector<BuiltinFn> table = {
        {"len", Type::Int, {Type::Str}},
        {"char_at", Type::Str, {Type::Str, Type::Int}},
    };
    return table;
}

namespace {

struct FnSig {
    Type return_type;
    std::vector<Type> params;
};

class Checker {
public:
    explicit Checker(const std::vector<ParsedFile>& files) : files_(files) {}

    CompileOutcome run() {
        for (const auto& b : builtins()) {
            signatures_[b.name] = FnSig{b.return_type, b.params};
        }
        for (const auto& file : files_) {
            for (const auto& fn : file.functions) {
                if (signatures_.count(fn.name)) {
                    report(file, fn.span.line_begin, "duplicate definition",
                           "duplicate definition: " + fn.name);
                    continue;
                }
                FnSig sig;
                sig.return_type = fn.return_type;
                for (const auto& p : fn.params) sig.params.push_back(p.type);
                signatures_[fn.name] = std::move(sig);
            }
        }
        for (const auto& file : files_) {
            for (const auto& fn : file.functions) {
                check_function(file, fn);
            }
        }
        std::sort(outcome_.diagnostics.begin(), outcome_.diagnostics.end(),
                  [](const Diagnostic& a, const Diagnostic& b) {
                      if (a.file != b.file) return a.file < b.file;
                      if (a.line != b.line) return a.line < b.line;
                      return a.message < b.message;
                  });
        outcome_.ok = outcome_.diagnostics.empty();
        return std::move(outcome_);
    }

private:
    using Scope = std::map<std::string, Type>;

    void report(const ParsedFile& file, int line, const std::string& code, const std::string& message) {
        outcome_.diagnostics.push_back(Diagnostic{code, message, file.path, line});
        outcome_.ok = false;
    }

    std::optional<Type> lookup_var(const std::vector<Scope>& scopes, const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return found->second;
        }
        return std::nullopt;
    }

    void check_function(const ParsedFile& file, const Function& fn) {
        std::vector<Scope> scopes(1);
        for (const auto& p : fn.params) {
            if (!scopes[0].emplace(p.name, p.type).second) {
                report(file, fn.span.line_begin, "duplicate definition",
                       "duplicate definition: parameter " + p.name);
            }
        }
        bool returns = check_body(file, fn, fn.body, scopes);
        if (fn.return_type != Type::Void && !returns) {
            report(file, fn.span.line_end, "missing return statement",
                   "missing return statement in " + fn.name);
        }
    }

    // Returns whether the statement list guarantees a return on every path.
    bool check_body(const ParsedFile& file, const Function& fn, const std::vector<int>& stmts,
                    std::vector<Scope>& scopes) {
        bool returns = false;
        for (int idx : stmts) {
            if (check_stmt(file, fn, file.stmt(idx), scopes)) returns = true;
        }
        return returns;
    }

    bool check_stmt(const ParsedFile& file, const Function& fn, const Stmt& s,
                    std::vector<Scope>& scopes) {
        switch (s.kind) {
        case Stmt::Kind::Decl: {
            std::optional<Type> init;
            if (s.value >= 0) init = check_expr(file, file.expr(s.value), scopes);
            if (scopes.back().count(s.name)) {
                report(file, s.span.line_begin, "duplicate definition",
                       "duplicate definition: " + s.name);
            } else {
                scopes.back().emplace(s.name, s.decl_type);
            }
            if (init && *init != s.decl_type) {
                report(file, s.span.line_begin, "type mismatch",
                       "type mismatch: cannot initialize " + to_string(s.decl_type) + " " + s.name +
                           " with " + to_string(*init));
            }
            return false;
        }
        case Stmt::Kind::Assign: {
            auto target = lookup_var(scopes, s.name);
            auto value = check_expr(file, file.expr(s.value), scopes);
            if (!target) {
                report(file, s.span.line_begin, "cannot find symbol",
                       "cannot find symbol: " + s.name);
            } else if (value && *value != *target) {
                report(file, s.span.line_begin, "type mismatch",
                       "type mismatch: cannot assign " + to_string(*value) + " to " +
                           to_string(*target) + " " + s.name);
            }
            return false;
        }
        case Stmt::Kind::CallStmt:
            check_expr(file, file.expr(s.value), scopes);
            return false;
        case Stmt::Kind::Assert: {
            auto t = check_expr(file, file.expr(s.value), scopes);
            if (t && *t != Type::Bool) {
                report(file, s.span.line_begin, "type mismatch",
                       "type mismatch: assert expects bool but found " + to_string(*t));
            }
            return false;
        }
        case Stmt::Kind::If: {
            check_condition(file, s, scopes);
            bool then_returns = check_block(file, fn, file.stmt(s.then_block), scopes);
            bool else_returns = false;
            if (s.else_block >= 0) {
                else_returns = check_block(file, fn, file.stmt(s.else_block), scopes);
            }
            return then_returns && else_returns && s.else_block >= 0;
        }
        case Stmt::Kind::While: {
            check_condition(file, s, scopes);
            check_block(file, fn, file.stmt(s.body_block), scopes);
            return false; // the loop may not run
        }
        case Stmt::Kind::Return: {
            std::optional<Type> t;
            if (s.value >= 0) t = check_expr(file, file.expr(s.value), scopes);
            if (fn.return_type == Type::Void) {
                if (s.value >= 0) {
                    report(file, s.span.line_begin, "type mismatch",
                           "type mismatch: void function " + fn.name + " returns a value");
                }
            } else if (s.value < 0) {
                report(file, s.span.line_begin, "type mismatch",
                       "type mismatch: missing return value in " + fn.name);
            } else if (t && *t != fn.return_type) {
                report(file, s.span.line_begin, "type mismatch",
                       "type mismatch: " + fn.name + " returns " + to_string(fn.return_type) +
                           " but found " + to_string(*t));
            }
            return true;
        }
        case Stmt::Kind::Block:
            return check_block(file, fn, s, scopes);
        }
        return false;
    }

    void check_condition(const ParsedFile& file, const Stmt& s, std::vector<Scope>& scopes) {
        auto t = check_expr(file, file.expr(s.cond), scopes);
        if (t && *t != Type::Bool) {
            report(file, s.span.line_begin, "type mismatch",
                   "type mismatch: condition must be bool but found " + to_string(*t));
        }
    }

    bool check_block(const ParsedFile& file, const Function& fn, const Stmt& block,
                     std::vector<Scope>& scopes) {
        scopes.emplace_back();
        bool returns = check_body(file, fn, block.children, scopes);
        scopes.pop_back();
        return returns;
    }

    std::optional<Type> check_expr(const ParsedFile& file, const Expr& e,
                                   std::vector<Scope>& scopes) {
        switch (e.kind) {
        case Expr::Kind::IntLit: return Type::Int;
        case Expr::Kind::BoolLit: return Type::Bool;
        case Expr::Kind::StrLit: return Type::Str;
        case Expr::Kind::Var: {
            auto t = lookup_var(scopes, e.name);
            if (!t) {
                report(file, e.span.line_begin, "cannot find symbol",
                       "cannot find symbol: " + e.name);
            }
            return t;
        }
        case Expr::Kind::Unary: {
            auto sub = check_expr(file, file.expr(e.args[0]), scopes);
            if (!sub) return std::nullopt;
            Type want = e.op == "!" ? Type::Bool : Type::Int;
            if (*sub != want) {
                report(file, e.span.line_begin, "type mismatch",
                       "type mismatch: operator " + e.op + " expects " + to_string(want) +
                           " but found " + to_string(*sub));
                return std::nullopt;
            }
            return want;
        }
        case Expr::Kind::Binary: {
            auto lhs = check_expr(file, file.expr(e.args[0]), scopes);
            auto rhs = check_expr(file, file.expr(e.args[1]), scopes);
            if (!lhs || !rhs) return std::nullopt;
            auto mismatch = [&]() -> std::optional<Type> {
                report(file, e.span.line_begin, "type mismatch",
                       "type mismatch: operator " + e.op + " cannot combine " + to_string(*lhs) +
                           " and " + to_string(*rhs));
                return std::nullopt;
            };
            if (e.op == "+") {
                if (*lhs == Type::Int && *rhs == Type::Int) return Type::Int;
                if (*lhs == Type::Str && *rhs == Type::Str) return Type::Str;
                return mismatch();
            }
            if (e.op == "-" || e.op == "*" || e.op == "/" || e.op == "%") {
                if (*lhs == Type::Int && *rhs == Type::Int) return Type::Int;
                return mismatch();
            }
            if (e.op == "<" || e.op == "<=" || e.op == ">" || e.op == ">=") {
                if (*lhs == Type::Int && *rhs == Type::Int) return Type::Bool;
                return mismatch();
            }
            if (e.op == "==" || e.op == "!=") {
                if (*lhs == *rhs) return Type::Bool;
                return mismatch();
            }
            if (e.op == "&&" || e.op == "||") {
                if (*lhs == Type::Bool && *rhs == Type::Bool) return Type::Bool;
                return mismatch();
            }
            return mismatch();
        }
        case Expr::Kind::Call: {
            auto sig = signatures_.find(e.name);
            std::vector<std::optional<Type>> args;
            for (int a : e.args) args.push_back(check_expr(file, file.expr(a), scopes));
            if (sig == signatures_.end()) {
                report(file, e.span.line_begin, "cannot find symbol",
                       "cannot find symbol: " + e.name);
                return std::nullopt;
            }
            if (args.size() != sig->second.params.size()) {
                report(file, e.span.line_begin, "wrong number of arguments",
                       "wrong number of arguments: " + e.name + " expects " +
                           std::to_string(sig->second.params.size()) + " but got " +
                           std::to_string(args.size()));
                return sig->second.return_type;
            }
            for (std::size_t i = 0; i < args.size(); ++i) {
                if (args[i] && *args[i] != sig->second.params[i]) {
                    report(file, e.span.line_begin, "type mismatch",
                           "type mismatch: argument " + std::to_string(i + 1) + " of " + e.name +
                               " expects " + to_string(sig->second.params[i]) + " but found " +
                               to_string(*args[i]));
                }
            }
            return sig->second.return_type;
        }
        }
        return std::nullopt;
    }

    const std::vector<ParsedFile>& files_;
    std::map<std::string, FnSig> signatures_;
    CompileOutcome outcome_;
};

} // namespace

CompileOutcome check_program(const std::vector<ParsedFile>& files) {
    return Checker(files).run();
}

} // namespace pbc::minilang
