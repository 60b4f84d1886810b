#pragma once

#include "pbc/minilang/ast.hpp"

#include <string>

namespace pbc::minilang {

// Throws pbc::ParseError with file:line:col on syntax errors.
ParsedFile parse_file(const std::string& path, const std::string& source);

} // namespace pbc::minilang
