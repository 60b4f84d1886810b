#include "pbc/minilang/interp.hpp"

#include "pbc/error.hpp"

#include <algorithm>
#include <map>
#include <variant>

namespace pbc::minilang {
namespace {

using Value = std::variant<std::monostate, long long, bool, std::string>;

struct Fault {
    enum class Kind { Assertion, Exception, Timeout };
    Kind kind;
    std::string message;
};

[[noreturn]] void raise(Fault::Kind kind, const std::string& message) {
    throw Fault{kind, message};
}

long long wrap_add(long long a, long long b) {
    return static_cast<long long>(static_cast<unsigned long long>(a) +
                                  static_cast<unsigned long long>(b));
}

long long wrap_sub(long long a, long long b) {
    return static_cast<long long>(static_cast<unsigned long long>(a) -
                                  static_cast<unsigned long long>(b));
}

long long wrap_mul(long long a, long long b) {
    return static_cast<long long>(static_cast<unsigned long long>(a) *
                                  static_cast<unsigned long long>(b));
}

class Interpreter {
public:
    Interpreter(const std::vector<ParsedFile>& files, std::uint64_t step_budget,
                std::chrono::steady_clock::time_point deadline)
        : files_(files), steps_left_(step_budget), deadline_(deadline) {
        for (std::size_t f = 0; f < files.size(); ++f) {
            for (std::size_t i = 0; i < files[f].functions.size(); ++i) {
                functions_.emplace(files[f].functions[i].name, std::make_pair(f, i));
            }
        }
    }

    void run(const std::string& fn_name) { call_function(fn_name, {}); }

private:
    using Scope = std::map<std::string, Value>;

    void tick() {
        if (steps_left_ == 0) raise(Fault::Kind::Timeout, "test timeout");
        --steps_left_;
        if ((steps_left_ & 0x7ff) == 0 && std::chrono::steady_clock::now() > deadline_) {
            raise(Fault::Kind::Timeout, "test timeout");
        }
    }

    Value* find_var(std::vector<Scope>& scopes, const std::string& name) {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    Value call_function(const std::string& name, std::vector<Value> args) {
        tick();
        if (name == "len") {
            return static_cast<long long>(std::get<std::string>(args.at(0)).size());
        }
        if (name == "char_at") {
            const auto& s = std::get<std::string>(args.at(0));
            long long i = std::get<long long>(args.at(1));
            if (i < 0 || static_cast<std::size_t>(i) >= s.size()) {
                raise(Fault::Kind::Exception, "out of bounds");
            }
            return std::string(1, s[static_cast<std::size_t>(i)]);
        }
        auto it = functions_.find(name);
        if (it == functions_.end()) {
            raise(Fault::Kind::Exception, "unknown function " + name);
        }
        if (++depth_ > 256) {
            --depth_;
            raise(Fault::Kind::Exception, "stack overflow");
        }
        const ParsedFile& file = files_[it->second.first];
        const Function& fn = file.functions[it->second.second];

        std::vector<Scope> scopes(1);
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            scopes[0][fn.params[i].name] = i < args.size() ? args[i] : Value{};
        }
        Value ret;
        exec_stmts(file, fn.body, scopes, ret);
        --depth_;
        return ret;
    }

    // Returns true when a `return` unwound the statement list.
    bool exec_stmts(const ParsedFile& file, const std::vector<int>& stmts,
                    std::vector<Scope>& scopes, Value& ret) {
        for (int idx : stmts) {
            if (exec_stmt(file, file.stmt(idx), scopes, ret)) return true;
        }
        return false;
    }

    bool exec_block(const ParsedFile& file, const Stmt& block, std::vector<Scope>& scopes,
                    Value& ret) {
        scopes.emplace_back();
        bool returned = exec_stmts(file, block.children, scopes, ret);
        scopes.pop_back();
        return returned;
    }

    bool exec_stmt(const ParsedFile& file, const Stmt& s, std::vector<Scope>& scopes, Value& ret) {
        tick();
        switch (s.kind) {
        case Stmt::Kind::Decl:
            scopes.back()[s.name] = s.value >= 0 ? eval(file, file.expr(s.value), scopes) : Value{};
            return false;
        case Stmt::Kind::Assign: {
            Value v = eval(file, file.expr(s.value), scopes);
            Value* slot = find_var(scopes, s.name);
            if (!slot) raise(Fault::Kind::Exception, "unknown variable " + s.name);
            *slot = std::move(v);
            return false;
        }
        case Stmt::Kind::CallStmt:
            eval(file, file.expr(s.value), scopes);
            return false;
        case Stmt::Kind::Assert: {
            Value v = eval(file, file.expr(s.value), scopes);
            if (!as_bool(v)) {
                raise(Fault::Kind::Assertion,
                      "assertion failed: " + file.text(file.expr(s.value).span) + " (" + file.path +
                          ":" + std::to_string(s.span.line_begin) + ")");
            }
            return false;
        }
        case Stmt::Kind::If: {
            if (as_bool(eval(file, file.expr(s.cond), scopes))) {
                return exec_block(file, file.stmt(s.then_block), scopes, ret);
            }
            if (s.else_block >= 0) {
                return exec_block(file, file.stmt(s.else_block), scopes, ret);
            }
            return false;
        }
        case Stmt::Kind::While:
            while (as_bool(eval(file, file.expr(s.cond), scopes))) {
                tick();
                if (exec_block(file, file.stmt(s.body_block), scopes, ret)) return true;
            }
            return false;
        case Stmt::Kind::Return:
            if (s.value >= 0) ret = eval(file, file.expr(s.value), scopes);
            return true;
        case Stmt::Kind::Block:
            return exec_block(file, s, scopes, ret);
        }
        return false;
    }

    long long as_int(const Value& v) {
        if (std::holds_alternative<std::monostate>(v)) raise(Fault::Kind::Exception, "null access");
        return std::get<long long>(v);
    }

    bool as_bool(const Value& v) {
        if (std::holds_alternative<std::monostate>(v)) raise(Fault::Kind::Exception, "null access");
        return std::get<bool>(v);
    }

    const std::string& as_str(const Value& v) {
        if (std::holds_alternative<std::monostate>(v)) raise(Fault::Kind::Exception, "null access");
        return std::get<std::string>(v);
    }

    Value eval(const ParsedFile& file, const Expr& e, std::vector<Scope>& scopes) {
        tick();
        switch (e.kind) {
        case Expr::Kind::IntLit: return e.int_value;
        case Expr::Kind::BoolLit: return e.bool_value;
        case Expr::Kind::StrLit: return e.str_value;
        case Expr::Kind::Var: {
            Value* slot = find_var(scopes, e.name);
            if (!slot) raise(Fault::Kind::Exception, "unknown variable " + e.name);
            if (std::holds_alternative<std::monostate>(*slot)) {
                raise(Fault::Kind::Exception, "null access");
            }
            return *slot;
        }
        case Expr::Kind::Unary: {
            Value sub = eval(file, file.expr(e.args[0]), scopes);
            if (e.op == "!") return !as_bool(sub);
            return wrap_sub(0, as_int(sub));
        }
        case Expr::Kind::Binary: {
            Value lhs = eval(file, file.expr(e.args[0]), scopes);
            Value rhs = eval(file, file.expr(e.args[1]), scopes);
            const std::string& op = e.op;
            if (op == "&&") return as_bool(lhs) && as_bool(rhs);
            if (op == "||") return as_bool(lhs) || as_bool(rhs);
            if (op == "==" || op == "!=") {
                bool eq;
                if (std::holds_alternative<long long>(lhs)) {
                    eq = as_int(lhs) == as_int(rhs);
                } else if (std::holds_alternative<bool>(lhs)) {
                    eq = as_bool(lhs) == as_bool(rhs);
                } else {
                    eq = as_str(lhs) == as_str(rhs);
                }
                return op == "==" ? eq : !eq;
            }
            if (op == "+") {
                if (std::holds_alternative<std::string>(lhs) ||
                    std::holds_alternative<std::string>(rhs)) {
                    return as_str(lhs) + as_str(rhs);
                }
                return wrap_add(as_int(lhs), as_int(rhs));
            }
            if (op == "-") return wrap_sub(as_int(lhs), as_int(rhs));
            if (op == "*") return wrap_mul(as_int(lhs), as_int(rhs));
            if (op == "/" || op == "%") {
                long long a = as_int(lhs);
                long long b = as_int(rhs);
                if (b == 0) raise(Fault::Kind::Exception, "division by zero");
                if (b == -1) return op == "/" ? wrap_sub(0, a) : 0;
                return op == "/" ? a / b : a % b;
            }
            long long a = as_int(lhs);
            long long b = as_int(rhs);
            if (op == "<") return a < b;
            if (op == "<=") return a <= b;
            if (op == ">") return a > b;
            return a >= b;
        }
        case Expr::Kind::Call: {
            std::vector<Value> args;
            args.reserve(e.args.size());
            for (int a : e.args) {
                Value v = eval(file, file.expr(a), scopes);
                args.push_back(std::move(v));
            }
            return call_function(e.name, std::move(args));
        }
        }
        return Value{};
    }

    const std::vector<ParsedFile>& files_;
    std::map<std::string, std::pair<std::size_t, std::size_t>> functions_;
    std::uint64_t steps_left_;
    std::chrono::steady_clock::time_point deadline_;
    int depth_ = 0;
};

} // namespace

std::vector<TestCase> discover_tests(const std::vector<ParsedFile>& files) {
    std::vector<TestCase> tests;
    for (std::size_t f = 0; f < files.size(); ++f) {
        for (std::size_t i = 0; i < files[f].functions.size(); ++i) {
            const Function& fn = files[f].functions[i];
            if (fn.name.rfind("test_", 0) == 0 && fn.params.empty()) {
                tests.push_back(TestCase{fn.name, static_cast<int>(f), static_cast<int>(i)});
            }
        }
    }
    // Files are already ordered by path; functions by position within a file.
    return tests;
}

TestRunOutcome run_suite(const std::vector<ParsedFile>& files, std::chrono::milliseconds suite_timeout,
                         std::uint64_t per_test_steps) {
    TestRunOutcome outcome;
    auto deadline = std::chrono::steady_clock::now() + suite_timeout;
    bool suite_timed_out = false;

    for (const auto& test : discover_tests(files)) {
        TestResult result;
        if (suite_timed_out || std::chrono::steady_clock::now() > deadline) {
            suite_timed_out = true;
            result.status = TestResult::Status::Timeout;
            result.failure_kind = "timeout";
            result.message = "suite timeout";
            outcome.results[test.name] = result;
            continue;
        }
        try {
            Interpreter interp(files, per_test_steps, deadline);
            interp.run(test.name);
            result.status = TestResult::Status::Pass;
        } catch (const Fault& fault) {
            switch (fault.kind) {
            case Fault::Kind::Assertion:
                result.status = TestResult::Status::Fail;
                result.failure_kind = "assertion";
                break;
            case Fault::Kind::Exception:
                result.status = TestResult::Status::Fail;
                result.failure_kind = "exception";
                break;
            case Fault::Kind::Timeout:
                result.status = TestResult::Status::Timeout;
                result.failure_kind = "timeout";
                break;
            }
            result.message = fault.message;
        }
        outcome.results[test.name] = result;
    }
    return outcome;
}

} // namespace pbc::minilang
