#include "pbc/adapter.hpp"

namespace pbc {

std::string to_string(StmtKind kind) {
    switch (kind) {
    case StmtKind::Declaration: return "declaration";
    case StmtKind::Assignment: return "assignment";
    case StmtKind::Call: return "call";
    case StmtKind::If: return "if";
    case StmtKind::While: return "while";
    case StmtKind::Return: return "return";
    case StmtKind::Block: return "block";
    }
    return "call";
}

bool TestRunOutcome::all_passed() const {
    for (const auto& [name, result] : results) {
        if (!result.passed()) return false;
    }
    return true;
}

std::vector<std::string> TestRunOutcome::failing_names() const {
    std::vector<std::string> names;
    for (const auto& [name, result] : results) {
        if (!result.passed()) names.push_back(name);
    }
    return names;
}

FileMap TargetAdapter::attach_test(FileMap files, const TestSpec& test, const std::string& blob) const {
    files["testcases/" + test.name] = blob;
    return files;
}

} // namespace pbc
