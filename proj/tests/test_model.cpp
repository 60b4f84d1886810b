#include "pbc/model.hpp"
#include "pbc/util.hpp"

#include <doctest.h>

#include <set>

using namespace pbc;

namespace {

BugRecord sample_nvd_record() {
    BugRecord r;
    r.source = Source::NVD;
    r.project = {"github.com", "taglib", "taglib", "c++"};
    r.fix_commit = "0eec2c68ac14e358e540def6cdc377ab844d2f48";
    r.parent_commit = "00a3701f3743bd19ba6da5694821d0670d2c73b7";
    DiffHunk hunk;
    hunk.location.file_path = "taglib_file.cpp";
    hunk.location.before_span = {{366, 366}};
    hunk.location.after_span = {{366, 366}};
    hunk.before_text = "if(length<0xffffffff && length+index < size())\n";
    hunk.after_text = "if(length < size() - index)\n";
    r.hunks = {hunk};
    r.bug_type = BugType::cwe("CWE-189");
    r.metadata = {{"cve_id", "CVE-2012-1584"}, {"cwe_id", "CWE-189"}, {"severity", "MEDIUM"}};
    r.created_at = "2023-05-02T12:00:00+00:00";
    r.id = record_id(r);
    return r;
}

// Deterministic generator for valid records across all three sources.
BugRecord generated_record(util::Rng& rng) {
    static const char* hosts[] = {"github.com", "gitlab.com", "local"};
    static const char* owners[] = {"alpha", "beta", "gamma", "delta"};
    static const char* names[] = {"libfoo", "bard", "quux"};
    static const char* langs[] = {"c", "java", "python", "minilang"};

    BugRecord r;
    switch (rng.pick(3)) {
    case 0: r.source = Source::NVD; break;
    case 1: r.source = Source::OSSFuzz; break;
    default: r.source = Source::Injection; break;
    }
    r.project = {hosts[rng.pick(3)], owners[rng.pick(4)], names[rng.pick(3)], langs[rng.pick(4)]};
    r.fix_commit = "fix" + std::to_string(rng.next() % 100000);
    r.parent_commit = "par" + std::to_string(rng.next() % 100000);

    std::size_t hunk_count = 1 + rng.pick(3);
    for (std::size_t h = 0; h < hunk_count; ++h) {
        DiffHunk hunk;
        hunk.location.file_path = "src/file" + std::to_string(rng.pick(4)) + ".c";
        std::size_t kind = rng.pick(3);
        int start = 1 + static_cast<int>(rng.pick(500));
        if (kind != 1) { // has before side
            int len = 1 + static_cast<int>(rng.pick(3));
            hunk.location.before_span = {{start, start + len - 1}};
            for (int i = 0; i < len; ++i) {
                hunk.before_text += "old line " + std::to_string(rng.next() % 1000) + "\n";
            }
        }
        if (kind != 2) { // has after side
            int len = 1 + static_cast<int>(rng.pick(3));
            hunk.location.after_span = {{start, start + len - 1}};
            for (int i = 0; i < len; ++i) {
                hunk.after_text += "new line " + std::to_string(rng.next() % 1000) + "\n";
            }
        }
        r.hunks.push_back(std::move(hunk));
    }

    switch (r.source) {
    case Source::NVD:
        r.bug_type = BugType::cwe("CWE-" + std::to_string(1 + rng.pick(900)));
        r.metadata["cve_id"] = "CVE-2023-" + std::to_string(1000 + rng.pick(9000));
        r.metadata["cwe_id"] = r.bug_type.value;
        break;
    case Source::OSSFuzz: {
        static const char* crashes[] = {"Integer-overflow", "Heap-buffer-overflow", "direct-leak",
                                        "floating point exception"};
        r.bug_type = BugType::crash(crashes[rng.pick(4)]);
        r.metadata["ossfuzz_issue_id"] = std::to_string(1 + rng.next() % 90000);
        if (rng.pick(2) == 0) {
            r.tests = std::vector<TestSpec>{
                TestSpec{"test_ossfuzz_" + r.metadata["ossfuzz_issue_id"], "new",
                         "testcases/" + r.metadata["ossfuzz_issue_id"]}};
        }
        break;
    }
    case Source::Injection:
        r.metadata["rule_id"] = std::to_string(1 + rng.pick(16));
        if (rng.pick(2) == 0) {
            r.bug_type = BugType::compile("type mismatch", "type mismatch: bool vs int");
        } else {
            static const char* kinds[] = {"assertion", "exception", "timeout", "crash"};
            r.bug_type = BugType::test_failure(kinds[rng.pick(4)], "failure detail");
            r.tests = std::vector<TestSpec>{TestSpec{"test_case_a", "existing", std::nullopt},
                                            TestSpec{"test_case_b", "existing", std::nullopt}};
        }
        break;
    }
    if (rng.pick(2) == 0) r.metadata["fix_date"] = "20" + std::to_string(15 + rng.pick(9)) + "-01-01";
    r.created_at = rng.pick(4) == 0 ? "" : "2023-06-01T00:00:00Z";
    r.id = record_id(r);
    return r;
}

} // namespace

TEST_CASE("record ids are deterministic and exclude created_at") {
    BugRecord a = sample_nvd_record();
    BugRecord b = sample_nvd_record();
    CHECK(record_id(a) == record_id(b));

    b.created_at = "1999-01-01T00:00:00Z";
    CHECK(record_id(a) == record_id(b));

    // One changed hunk line must change the id.
    BugRecord c = sample_nvd_record();
    c.hunks[0].after_text = "if(length < size() + index)\n";
    CHECK(record_id(a) != record_id(c));
}

TEST_CASE("record ids normalize newlines before hashing") {
    BugRecord a = sample_nvd_record();
    BugRecord b = sample_nvd_record();
    b.hunks[0].before_text = "if(length<0xffffffff && length+index < size())\r\n";
    CHECK(record_id(a) == record_id(b));
}

TEST_CASE("validate flags missing per-source metadata") {
    BugRecord r = sample_nvd_record();
    r.metadata.erase("cwe_id");
    auto violations = validate(r);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("cwe_id") != std::string::npos);
}

TEST_CASE("validate flags behavior bugs without tests") {
    BugRecord r = sample_nvd_record();
    r.source = Source::Injection;
    r.metadata = {{"rule_id", "12"}};
    r.bug_type = BugType::test_failure("exception", "null access");
    r.tests = std::vector<TestSpec>{};
    auto violations = validate(r);
    bool found = false;
    for (const auto& v : violations) {
        if (v.find("tests") != std::string::npos) found = true;
    }
    CHECK(found);
}

TEST_CASE("a well-formed crash record validates cleanly") {
    BugRecord r = sample_nvd_record();
    r.source = Source::OSSFuzz;
    r.bug_type = BugType::crash("floating point exception");
    r.metadata = {{"ossfuzz_issue_id", "40112"}};
    r.tests = std::vector<TestSpec>{TestSpec{"test_ossfuzz_40112", "new", "testcases/40112"}};
    r.id = record_id(r);
    CHECK(validate(r).empty());
}

TEST_CASE("validate checks spans against hunk text") {
    BugRecord r = sample_nvd_record();
    r.hunks[0].before_text = "one line\nsecond line\n"; // span says one line
    auto violations = validate(r);
    REQUIRE(!violations.empty());
    CHECK(violations[0].find("before_text") != std::string::npos);

    r = sample_nvd_record();
    r.hunks[0].location.before_span = {{10, 5}};
    CHECK(!validate(r).empty());

    r = sample_nvd_record();
    r.hunks[0].location.before_span.reset();
    r.hunks[0].before_text.clear();
    r.hunks[0].location.after_span.reset();
    r.hunks[0].after_text.clear();
    bool both_empty_flagged = false;
    for (const auto& v : validate(r)) {
        if (v.find("at least one") != std::string::npos) both_empty_flagged = true;
    }
    CHECK(both_empty_flagged);
}

TEST_CASE("cwe ids accept the unknown sentinel and reject other shapes") {
    BugRecord r = sample_nvd_record();
    r.bug_type = BugType::cwe("CWE-unknown");
    r.metadata["cwe_id"] = "CWE-unknown";
    CHECK(validate(r).empty());

    r.bug_type = BugType::cwe("NVD-CWE-Other");
    CHECK(!validate(r).empty());
}

TEST_CASE("test kinds are tied to their sources") {
    BugRecord r = sample_nvd_record();
    r.source = Source::OSSFuzz;
    r.bug_type = BugType::crash("Integer-overflow");
    r.metadata = {{"ossfuzz_issue_id", "57986"}};
    r.tests = std::vector<TestSpec>{TestSpec{"t", "existing", std::nullopt}};
    bool flagged = false;
    for (const auto& v : validate(r)) {
        if (v.find("kind=existing") != std::string::npos) flagged = true;
    }
    CHECK(flagged);
}

TEST_CASE("serialization round-trips and ids never collide on a generated corpus") {
    util::Rng rng(20230810);
    std::set<std::string> ids;
    std::set<std::string> bodies;
    const int n = 100000;
    int distinct = 0;
    for (int i = 0; i < n; ++i) {
        BugRecord r = generated_record(rng);
        if (i < 2000) { // full round-trip on a sample; hashing dominates otherwise
            BugRecord back = record_from_jsonl(record_to_jsonl(r));
            REQUIRE(back == r);
            REQUIRE(validate(r).empty());
        }
        std::string body = record_to_json(r).dump();
        if (bodies.insert(body).second) {
            ++distinct;
            ids.insert(r.id);
        }
    }
    // Distinct canonical bodies must map to distinct ids.
    CHECK(static_cast<int>(ids.size()) == distinct);
    CHECK(distinct > n / 2);
}

TEST_CASE("validate is total on malformed records") {
    util::Rng rng(99);
    for (int i = 0; i < 500; ++i) {
        BugRecord r = generated_record(rng);
        switch (rng.pick(6)) {
        case 0: r.project.owner.clear(); break;
        case 1: r.project.host = "-bad-.example"; break;
        case 2: r.hunks.clear(); break;
        case 3: r.metadata.clear(); break;
        case 4: r.bug_type.value = ""; break;
        case 5:
            if (r.tests) (*r.tests)[0].kind = "weird";
            break;
        }
        CHECK_NOTHROW(validate(r));
    }
}

TEST_CASE("hostname validation") {
    CHECK(util::valid_hostname("github.com"));
    CHECK(util::valid_hostname("local"));
    CHECK(util::valid_hostname("a-b.c-d.e"));
    CHECK(!util::valid_hostname(""));
    CHECK(!util::valid_hostname("-lead.com"));
    CHECK(!util::valid_hostname("trail-.com"));
    CHECK(!util::valid_hostname("dou..ble"));
    CHECK(!util::valid_hostname("has space.com"));
}

TEST_CASE("bug type display keys") {
    CHECK(BugType::cwe("CWE-79").display_key() == "CWE-79");
    CHECK(BugType::crash("Integer-overflow").display_key() == "Integer-overflow");
    CHECK(BugType::compile("cannot find symbol", "cannot find symbol: x").display_key() ==
          "cannot find symbol");
    CHECK(BugType::test_failure("exception", "null access").display_key() == "null access");
    CHECK(BugType::test_failure("assertion", "assertion failed: x == 1").display_key() ==
          "assertion failure");
    CHECK(BugType::test_failure("timeout", "suite timeout").display_key() == "timeout");
}
