#pragma once

#include "pbc/adapter.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace pbc::external {

// key=value adapter configuration ('#' starts a comment line).
struct Config {
    std::string compile_cmd;
    std::string test_cmd;
    std::string workdir = ".";     // subdirectory of the tree where commands run
    int timeout_s = 300;
    std::string result_regex;      // optional; matches one failing test per line
    std::string failing_test_group = "test"; // named capture holding the test name
    std::string compile_diag_regex;          // optional; named captures: code, message
    std::string sources;           // optional; ';'-separated statement files
    std::string language = "external";

    static Config parse_file(const std::filesystem::path& path);
    static Config parse(const std::string& content, const std::filesystem::path& origin);
};

// Runs a real project through configured shell commands. Statements are a
// line-level model over the configured source files; only the constructor
// rule (Rule-4) has rewrites here.
class ExternalAdapter : public TargetAdapter {
public:
    explicit ExternalAdapter(Config config);
    ~ExternalAdapter() override;

    std::string language() const override { return config_.language; }

    SnapshotPtr load(const std::filesystem::path& root) const override;
    SnapshotPtr from_files(FileMap files) const override;

    std::vector<Statement> enumerate_statements(const Snapshot& snapshot) const override;
    SnapshotPtr render(const Snapshot& snapshot,
                       const std::vector<StatementEdit>& edits) const override;
    CompileOutcome compile(const Snapshot& snapshot) const override;
    TestRunOutcome run_tests(const Snapshot& snapshot,
                             std::chrono::milliseconds suite_timeout) const override;
    std::chrono::milliseconds default_timeout() const override;
    const RuleCatalog& catalog() const override;

    const Config& config() const { return config_; }

private:
    Config config_;
    std::unique_ptr<RuleCatalog> catalog_;
};

// Translates (?<name>...) groups into plain groups plus a name->index map,
// since std::regex has no named captures.
struct NamedRegex {
    std::string pattern;
    std::map<std::string, int> groups;

    static NamedRegex compile(const std::string& raw);
};

} // namespace pbc::external
