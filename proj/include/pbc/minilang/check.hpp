#pragma once

#include "pbc/adapter.hpp"
#include "pbc/minilang/ast.hpp"

#include <vector>

namespace pbc::minilang {

struct BuiltinFn {
    const char* name;
    Type return_type;
    std::vector<Type> params;
};

const std::vector<BuiltinFn>& builtins();

// Name resolution plus static type check over all files of a snapshot.
// Diagnostic codes come from a fixed catalog: "cannot find symbol",
// "type mismatch", "wrong number of arguments", "duplicate definition",
// "missing return statement".
CompileOutcome check_program(const std::vector<ParsedFile>& files);

} // namespace pbc::minilang
