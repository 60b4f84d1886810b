#pragma once

#include "pbc/minilang/ast.hpp"

#include <string>
#include <vector>

namespace pbc::minilang {

// Throws pbc::ParseError with file:line:col on bad input.
std::vector<Token> tokenize(const std::string& path, const std::string& source);

bool is_keyword(const std::string& word);

} // namespace pbc::minilang
