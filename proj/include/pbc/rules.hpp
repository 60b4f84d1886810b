#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pbc {

struct StatementId {
    std::string file;
    std::string path; // function name plus block path, e.g. "clamp_sum/3/then/0"

    std::string str() const { return file + ":" + path; }
    auto operator<=>(const StatementId&) const = default;
};

struct StatementEdit {
    enum class Action { Replace, Delete, InsertBefore };

    StatementId target;
    Action action = Action::Replace;
    std::string text; // Replace: statement text; InsertBefore: newline-terminated lines
};

struct InjectionRule {
    int id = 0; // 1..16
    std::string name;
    std::string granularity;

    auto operator<=>(const InjectionRule&) const = default;
};

// The fixed 16-rule catalog.
const std::array<InjectionRule, 16>& rule_table();
const InjectionRule& rule_by_id(int id);

// Parses "1-16", "2,5,9" or "1-4,12" into ascending unique rule ids.
std::vector<int> parse_rule_list(const std::string& spec);

struct MutantCandidate {
    StatementId statement_id;
    int rule_id = 0;
    std::uint64_t seed = 0;
    std::vector<StatementEdit> edits;
    std::string description;
};

} // namespace pbc
