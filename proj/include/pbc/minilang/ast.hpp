#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pbc::minilang {

// Byte range [begin,end) plus 1-based line range, both within one file.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    int line_begin = 1;
    int line_end = 1;
};

enum class TokKind { Ident, Keyword, IntLit, StrLit, Sym, Eof };

struct Token {
    TokKind kind = TokKind::Eof;
    std::string text;      // raw source text (keywords/idents/symbols) or raw literal
    std::string str_value; // decoded value for StrLit
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 1;
    int col = 1;
};

enum class Type { Int, Bool, Str, Void };

std::string to_string(Type type);

struct Expr {
    enum class Kind { IntLit, BoolLit, StrLit, Var, Unary, Binary, Call };

    Kind kind = Kind::IntLit;
    Span span;
    long long int_value = 0;
    bool bool_value = false;
    std::string str_value;
    std::string name;        // Var / Call callee
    std::string op;          // Unary / Binary operator text
    std::size_t op_tok = 0;  // token index of the operator / callee / literal
    std::vector<int> args;   // Unary: [sub]; Binary: [lhs, rhs]; Call: arguments
};

struct Stmt {
    enum class Kind { Decl, Assign, CallStmt, Assert, If, While, Return, Block };

    Kind kind = Kind::Decl;
    Span span;

    // Decl
    Type decl_type = Type::Int;
    std::size_t type_tok = 0;
    std::string name; // Decl / Assign target
    int value = -1;   // Decl init / Assign value / CallStmt call / Assert expr / Return expr

    // If / While
    int cond = -1;
    int then_block = -1;
    int else_block = -1;
    int body_block = -1;

    // Block
    std::vector<int> children;
    std::size_t open_brace_tok = 0;
    std::size_t close_brace_tok = 0;
};

struct Param {
    Type type = Type::Int;
    std::string name;
};

struct Function {
    std::string name;
    Type return_type = Type::Void;
    std::vector<Param> params;
    std::vector<int> body; // direct child statement indices
    Span span;
    Span body_span; // from '{' to '}'
};

struct ParsedFile {
    std::string path;
    std::string source;
    std::vector<Token> tokens;
    std::vector<Expr> exprs;
    std::vector<Stmt> stmts;
    std::vector<Function> functions;

    const Expr& expr(int i) const { return exprs[static_cast<std::size_t>(i)]; }
    const Stmt& stmt(int i) const { return stmts[static_cast<std::size_t>(i)]; }
    std::string text(const Span& span) const { return source.substr(span.begin, span.end - span.begin); }
};

} // namespace pbc::minilang
