#include "pbc/rules.hpp"

#include "pbc/error.hpp"

#include <algorithm>

namespace pbc {

const std::array<InjectionRule, 16>& rule_table() {
    static const std::array<InjectionRule, 16> table{{
        {1, "modify declaring type", "type"},
        {2, "modify operator", "operator"},
        {3, "modify literal", "literal"},
        {4, "modify constructor", "constructor"},
        {5, "swap argument", "argument"},
        {6, "modify boolean expression", "expression"},
        {7, "modify invocation", "invocation"},
        {8, "compound modification", "compound"},
        {9, "replace similar statement", "statement"},
        {10, "move statement", "statement"},
        {11, "insert statement", "statement"},
        {12, "wrap statement", "statement"},
        {13, "insert block", "block"},
        {14, "delete block", "block"},
        {15, "unwrap block", "block"},
        {16, "remove block", "block"},
    }};
    return table;
}

const InjectionRule& rule_by_id(int id) {
    if (id < 1 || id > 16) throw UsageError("rule id out of range: " + std::to_string(id));
    return rule_table()[static_cast<std::size_t>(id - 1)];
}

std::vector<int> parse_rule_list(const std::string& spec) {
    std::vector<int> ids;
    std::size_t pos = 0;
    auto read_int = [&]() -> int {
        std::size_t start = pos;
        while (pos < spec.size() && isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
        if (pos == start) throw UsageError("bad rule list: " + spec);
        return std::stoi(spec.substr(start, pos - start));
    };
    while (pos < spec.size()) {
        int lo = read_int();
        int hi = lo;
        if (pos < spec.size() && spec[pos] == '-') {
            ++pos;
            hi = read_int();
        }
        if (lo < 1 || hi > 16 || lo > hi) throw UsageError("rule ids must be within 1..16: " + spec);
        for (int i = lo; i <= hi; ++i) ids.push_back(i);
        if (pos < spec.size()) {
            if (spec[pos] != ',') throw UsageError("bad rule list: " + spec);
            ++pos;
        }
    }
    if (ids.empty()) throw UsageError("empty rule list");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace pbc
