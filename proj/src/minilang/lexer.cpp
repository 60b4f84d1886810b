#include "pbc/minilang/lexer.hpp"

#include "pbc/error.hpp"

#include <array>
#include <cctype>

namespace pbc::minilang {
namespace {

const std::array<const char*, 11> kKeywords = {
    "int", "bool", "str", "void", "if", "else", "while", "return", "assert", "true", "false",
};

const std::array<const char*, 6> kTwoCharSyms = {"==", "!=", "<=", ">=", "&&", "||"};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

bool is_keyword(const std::string& word) {
    for (const char* kw : kKeywords) {
        if (word == kw) return true;
    }
    return false;
}

std::vector<Token> tokenize(const std::string& path, const std::string& source) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto fail = [&](const std::string& what) {
        throw ParseError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
    };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };

    while (i < source.size()) {
        char c = source[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
            while (i < source.size() && source[i] != '\n') advance(1);
            continue;
        }

        Token tok;
        tok.begin = i;
        tok.line = line;
        tok.col = col;

        if (ident_start(c)) {
            std::size_t j = i;
            while (j < source.size() && ident_char(source[j])) ++j;
            tok.text = source.substr(i, j - i);
            tok.kind = is_keyword(tok.text) ? TokKind::Keyword : TokKind::Ident;
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
            tok.text = source.substr(i, j - i);
            tok.kind = TokKind::IntLit;
            advance(j - i);
        } else if (c == '"') {
            std::string value;
            std::size_t j = i + 1;
            while (true) {
                if (j >= source.size() || source[j] == '\n') fail("unterminated string literal");
                char d = source[j];
                if (d == '"') break;
                if (d == '\\') {
                    if (j + 1 >= source.size()) fail("bad escape");
                    char e = source[j + 1];
                    switch (e) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    default: fail(std::string("unknown escape \\") + e);
                    }
                    j += 2;
                } else {
                    value += d;
                    ++j;
                }
            }
            tok.kind = TokKind::StrLit;
            tok.text = source.substr(i, j + 1 - i);
            tok.str_value = value;
            advance(j + 1 - i);
        } else {
            bool two = false;
            if (i + 1 < source.size()) {
                std::string pair = source.substr(i, 2);
                for (const char* sym : kTwoCharSyms) {
                    if (pair == sym) {
                        two = true;
                        break;
                    }
                }
            }
            static const std::string kSingles = "(){};,=+-*/%<>!";
            if (!two && kSingles.find(c) == std::string::npos) {
                fail(std::string("unexpected character '") + c + "'");
            }
            tok.kind = TokKind::Sym;
            tok.text = source.substr(i, two ? 2 : 1);
            advance(two ? 2 : 1);
        }
        tok.end = i;
        tokens.push_back(std::move(tok));
    }

    Token eof;
    eof.kind = TokKind::Eof;
    eof.begin = eof.end = source.size();
    eof.line = line;
    eof.col = col;
    tokens.push_back(eof);
    return tokens;
}

} // namespace pbc::minilang
