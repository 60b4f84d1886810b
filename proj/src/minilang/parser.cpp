#include "pbc/minilang/parser.hpp"

#include "pbc/error.hpp"
#include "pbc/minilang/lexer.hpp"

namespace pbc::minilang {
namespace {

class Parser {
public:
    Parser(std::string path, std::string source) : path_(std::move(path)) {
        file_.path = path_;
        file_.source = std::move(source);
        file_.tokens = tokenize(path_, file_.source);
    }

    ParsedFile run() {
        while (!at_eof()) {
            parse_function();
        }
        return std::move(file_);
    }

private:
    const Token& cur() const { return file_.tokens[pos_]; }
    const Token& peek(std::size_t n = 1) const {
        std::size_t i = pos_ + n;
        if (i >= file_.tokens.size()) i = file_.tokens.size() - 1;
        return file_.tokens[i];
    }
    bool at_eof() const { return cur().kind == TokKind::Eof; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = cur();
        throw ParseError(path_ + ":" + std::to_string(t.line) + ":" + std::to_string(t.col) + ": " +
                         what + (t.kind == TokKind::Eof ? " (at end of file)" : " near '" + t.text + "'"));
    }

    std::size_t eat() { return pos_++; }

    std::size_t expect_sym(const std::string& sym) {
        if (cur().kind != TokKind::Sym || cur().text != sym) fail("expected '" + sym + "'");
        return eat();
    }

    std::string expect_ident() {
        if (cur().kind != TokKind::Ident) fail("expected identifier");
        return file_.tokens[eat()].text;
    }

    bool is_type_keyword(const Token& t) const {
        return t.kind == TokKind::Keyword &&
               (t.text == "int" || t.text == "bool" || t.text == "str" || t.text == "void");
    }

    Type parse_type(bool allow_void) {
        if (!is_type_keyword(cur())) fail("expected type");
        std::string name = file_.tokens[eat()].text;
        if (name == "int") return Type::Int;
        if (name == "bool") return Type::Bool;
        if (name == "str") return Type::Str;
        if (!allow_void) fail("'void' is only valid as a return type");
        return Type::Void;
    }

    Span span_between(std::size_t first_tok, std::size_t last_tok) const {
        const Token& a = file_.tokens[first_tok];
        const Token& b = file_.tokens[last_tok];
        Span s;
        s.begin = a.begin;
        s.end = b.end;
        s.line_begin = a.line;
        s.line_end = b.line;
        return s;
    }

    int add_expr(Expr e) {
        file_.exprs.push_back(std::move(e));
        return static_cast<int>(file_.exprs.size() - 1);
    }

    int add_stmt(Stmt s) {
        file_.stmts.push_back(std::move(s));
        return static_cast<int>(file_.stmts.size() - 1);
    }

    void parse_function() {
        std::size_t first = pos_;
        Function fn;
        fn.return_type = parse_type(true);
        fn.name = expect_ident();
        expect_sym("(");
        if (!(cur().kind == TokKind::Sym && cur().text == ")")) {
            while (true) {
                Param p;
                p.type = parse_type(false);
                p.name = expect_ident();
                fn.params.push_back(std::move(p));
                if (cur().kind == TokKind::Sym && cur().text == ",") {
                    eat();
                    continue;
                }
                break;
            }
        }
        expect_sym(")");
        std::size_t open = expect_sym("{");
        while (!(cur().kind == TokKind::Sym && cur().text == "}")) {
            if (at_eof()) fail("unterminated function body");
            fn.body.push_back(parse_statement());
        }
        std::size_t close = eat();
        fn.span = span_between(first, close);
        fn.body_span = span_between(open, close);
        file_.functions.push_back(std::move(fn));
    }

    int parse_block() {
        Stmt block;
        block.kind = Stmt::Kind::Block;
        std::size_t open = expect_sym("{");
        block.open_brace_tok = open;
        while (!(cur().kind == TokKind::Sym && cur().text == "}")) {
            if (at_eof()) fail("unterminated block");
            block.children.push_back(parse_statement());
        }
        std::size_t close = eat();
        block.close_brace_tok = close;
        block.span = span_between(open, close);
        return add_stmt(std::move(block));
    }

    int parse_statement() {
        std::size_t first = pos_;
        const Token& t = cur();

        if (is_type_keyword(t)) {
            Stmt s;
            s.kind = Stmt::Kind::Decl;
            s.type_tok = pos_;
            s.decl_type = parse_type(false);
            s.name = expect_ident();
            if (cur().kind == TokKind::Sym && cur().text == "=") {
                eat();
                s.value = parse_expr();
            }
            std::size_t semi = expect_sym(";");
            s.span = span_between(first, semi);
            return add_stmt(std::move(s));
        }

        if (t.kind == TokKind::Keyword && t.text == "if") {
            eat();
            Stmt s;
            s.kind = Stmt::Kind::If;
            expect_sym("(");
            s.cond = parse_expr();
            expect_sym(")");
            s.then_block = parse_block();
            std::size_t last = static_cast<std::size_t>(
                file_.stmt(s.then_block).close_brace_tok);
            if (cur().kind == TokKind::Keyword && cur().text == "else") {
                eat();
                s.else_block = parse_block();
                last = file_.stmt(s.else_block).close_brace_tok;
            }
            s.span = span_between(first, last);
            return add_stmt(std::move(s));
        }

        if (t.kind == TokKind::Keyword && t.text == "while") {
            eat();
            Stmt s;
            s.kind = Stmt::Kind::While;
            expect_sym("(");
            s.cond = parse_expr();
            expect_sym(")");
            s.body_block = parse_block();
            s.span = span_between(first, file_.stmt(s.body_block).close_brace_tok);
            return add_stmt(std::move(s));
        }

        if (t.kind == TokKind::Keyword && t.text == "return") {
            eat();
            Stmt s;
            s.kind = Stmt::Kind::Return;
            if (!(cur().kind == TokKind::Sym && cur().text == ";")) {
                s.value = parse_expr();
            }
            std::size_t semi = expect_sym(";");
            s.span = span_between(first, semi);
            return add_stmt(std::move(s));
        }

        if (t.kind == TokKind::Keyword && t.text == "assert") {
            eat();
            Stmt s;
            s.kind = Stmt::Kind::Assert;
            s.value = parse_expr();
            std::size_t semi = expect_sym(";");
            s.span = span_between(first, semi);
            return add_stmt(std::move(s));
        }

        if (t.kind == TokKind::Ident) {
            if (peek().kind == TokKind::Sym && peek().text == "=") {
                Stmt s;
                s.kind = Stmt::Kind::Assign;
                s.name = expect_ident();
                expect_sym("=");
                s.value = parse_expr();
                std::size_t semi = expect_sym(";");
                s.span = span_between(first, semi);
                return add_stmt(std::move(s));
            }
            if (peek().kind == TokKind::Sym && peek().text == "(") {
                Stmt s;
                s.kind = Stmt::Kind::CallStmt;
                s.value = parse_call();
                std::size_t semi = expect_sym(";");
                s.span = span_between(first, semi);
                return add_stmt(std::move(s));
            }
        }
        fail("expected statement");
    }

    int parse_call() {
        Expr e;
        e.kind = Expr::Kind::Call;
        std::size_t first = pos_;
        e.op_tok = pos_;
        e.name = expect_ident();
        expect_sym("(");
        if (!(cur().kind == TokKind::Sym && cur().text == ")")) {
            while (true) {
                e.args.push_back(parse_expr());
                if (cur().kind == TokKind::Sym && cur().text == ",") {
                    eat();
                    continue;
                }
                break;
            }
        }
        std::size_t close = expect_sym(")");
        e.span = span_between(first, close);
        return add_expr(std::move(e));
    }

    // Precedence climbing: || < && < ==/!= < comparisons < +/- < */ /% < unary.
    int parse_expr() { return parse_or(); }

    int parse_binary_level(int (Parser::*next)(), std::initializer_list<const char*> ops) {
        int lhs = (this->*next)();
        while (cur().kind == TokKind::Sym) {
            bool matched = false;
            for (const char* op : ops) {
                if (cur().text == op) {
                    matched = true;
                    break;
                }
            }
            if (!matched) break;
            Expr e;
            e.kind = Expr::Kind::Binary;
            e.op = cur().text;
            e.op_tok = eat();
            int rhs = (this->*next)();
            e.args = {lhs, rhs};
            e.span.begin = file_.expr(lhs).span.begin;
            e.span.end = file_.expr(rhs).span.end;
            e.span.line_begin = file_.expr(lhs).span.line_begin;
            e.span.line_end = file_.expr(rhs).span.line_end;
            lhs = add_expr(std::move(e));
        }
        return lhs;
    }

    int parse_or() { return parse_binary_level(&Parser::parse_and, {"||"}); }
    int parse_and() { return parse_binary_level(&Parser::parse_equality, {"&&"}); }
    int parse_equality() { return parse_binary_level(&Parser::parse_comparison, {"==", "!="}); }
    int parse_comparison() { return parse_binary_level(&Parser::parse_additive, {"<", "<=", ">", ">="}); }
    int parse_additive() { return parse_binary_level(&Parser::parse_multiplicative, {"+", "-"}); }
    int parse_multiplicative() { return parse_binary_level(&Parser::parse_unary, {"*", "/", "%"}); }

    int parse_unary() {
        if (cur().kind == TokKind::Sym && (cur().text == "!" || cur().text == "-")) {
            Expr e;
            e.kind = Expr::Kind::Unary;
            e.op = cur().text;
            std::size_t op_tok = eat();
            e.op_tok = op_tok;
            int sub = parse_unary();
            e.args = {sub};
            e.span.begin = file_.tokens[op_tok].begin;
            e.span.end = file_.expr(sub).span.end;
            e.span.line_begin = file_.tokens[op_tok].line;
            e.span.line_end = file_.expr(sub).span.line_end;
            return add_expr(std::move(e));
        }
        return parse_primary();
    }

    int parse_primary() {
        const Token& t = cur();
        if (t.kind == TokKind::Sym && t.text == "(") {
            eat();
            int inner = parse_expr();
            expect_sym(")");
            return inner;
        }
        if (t.kind == TokKind::IntLit) {
            Expr e;
            e.kind = Expr::Kind::IntLit;
            e.op_tok = pos_;
            try {
                e.int_value = std::stoll(t.text);
            } catch (...) {
                fail("integer literal out of range");
            }
            e.span = span_between(pos_, pos_);
            eat();
            return add_expr(std::move(e));
        }
        if (t.kind == TokKind::StrLit) {
            Expr e;
            e.kind = Expr::Kind::StrLit;
            e.op_tok = pos_;
            e.str_value = t.str_value;
            e.span = span_between(pos_, pos_);
            eat();
            return add_expr(std::move(e));
        }
        if (t.kind == TokKind::Keyword && (t.text == "true" || t.text == "false")) {
            Expr e;
            e.kind = Expr::Kind::BoolLit;
            e.op_tok = pos_;
            e.bool_value = t.text == "true";
            e.span = span_between(pos_, pos_);
            eat();
            return add_expr(std::move(e));
        }
        if (t.kind == TokKind::Ident) {
            if (peek().kind == TokKind::Sym && peek().text == "(") {
                return parse_call();
            }
            Expr e;
            e.kind = Expr::Kind::Var;
            e.name = t.text;
            e.op_tok = pos_;
            e.span = span_between(pos_, pos_);
            eat();
            return add_expr(std::move(e));
        }
        fail("expected expression");
    }

    std::string path_;
    ParsedFile file_;
    std::size_t pos_ = 0;
};

} // namespace

ParsedFile parse_file(const std::string& path, const std::string& source) {
    return Parser(path, source).run();
}

} // namespace pbc::minilang
