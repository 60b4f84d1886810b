#include "fixture_repos.hpp"

#include "pbc/error.hpp"
#include "pbc/process.hpp"

#include <set>

namespace testsupport {

using pbc::FileMap;

namespace {

void run_git(const std::filesystem::path& dir, const std::vector<std::string>& args,
             const std::map<std::string, std::string>& env = {}) {
    std::vector<std::string> argv{"git", "-C", dir.string()};
    argv.insert(argv.end(), args.begin(), args.end());
    pbc::ProcessOptions opts;
    opts.env = env;
    auto result = pbc::run_process(argv, opts);
    if (!result.ok()) {
        throw pbc::IoError("git failed: " + result.err);
    }
}

std::string commit_date(std::size_t index) {
    // One fixed timestamp per commit index keeps ids stable.
    return "2023-05-0" + std::to_string(index + 1) + "T12:00:00 +0000";
}

} // namespace

std::vector<std::string> build_repo(const std::filesystem::path& dir,
                                    const std::vector<CommitSpec>& commits) {
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    run_git(dir, {"init", "-q"});
    run_git(dir, {"config", "user.name", "Fixture Bot"});
    run_git(dir, {"config", "user.email", "fixture@example.com"});

    std::vector<std::string> shas;
    for (std::size_t i = 0; i < commits.size(); ++i) {
        // Materialize the exact tree: drop files absent from the spec.
        std::set<std::string> keep;
        for (const auto& [path, content] : commits[i].tree) {
            keep.insert(path);
            pbc::util::write_file(dir / path, content);
        }
        for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
            if (!entry.is_regular_file()) continue;
            auto rel = std::filesystem::relative(entry.path(), dir).generic_string();
            if (rel.rfind(".git/", 0) == 0) continue;
            if (!keep.count(rel)) std::filesystem::remove(entry.path());
        }
        run_git(dir, {"add", "-A"});
        std::map<std::string, std::string> env{
            {"GIT_AUTHOR_DATE", commit_date(i)},
            {"GIT_COMMITTER_DATE", commit_date(i)},
        };
        run_git(dir, {"commit", "-q", "--allow-empty", "-m", commits[i].message}, env);
        auto head = pbc::run_process({"git", "-C", dir.string(), "rev-parse", "HEAD"});
        if (!head.ok()) throw pbc::IoError("rev-parse failed");
        shas.push_back(pbc::util::trim(head.out));
    }
    return shas;
}

namespace {

std::string filler_file(const std::string& tag, int total_lines,
                        const std::map<int, std::string>& real_lines) {
    std::string out;
    for (int i = 1; i <= total_lines; ++i) {
        auto it = real_lines.find(i);
        if (it != real_lines.end()) {
            out += it->second;
        } else {
            out += "// " + tag + " filler " + std::to_string(i);
        }
        out += "\n";
    }
    return out;
}

FileMap span_repo_base() {
    FileMap tree;
    tree["taglib_file.cpp"] = filler_file(
        "taglib", 400, {{366, "if(length<0xffffffff && length+index < size())"}});
    tree["audio_decoder.c"] = filler_file(
        "audio", 2900,
        {{2859, "buf[i + 0] = - (USE_FIXED + 1)*buf[i + 0];"},
         {2860, "buf[i + 1] =  (USE_FIXED + 1)*buf[i + 1];"}});
    tree["chart_axis.java"] =
        filler_file("chart", 4500, {{4493, "Collection c = r.getAnnotations();"}});
    return tree;
}

} // namespace

std::vector<std::string> build_span_repo(const std::filesystem::path& dir) {
    FileMap base = span_repo_base();

    FileMap fix1 = base;
    fix1["taglib_file.cpp"] =
        filler_file("taglib", 400, {{366, "if(length < size() - index)"}});

    FileMap fix2 = fix1;
    fix2["audio_decoder.c"] = filler_file(
        "audio", 2900,
        {{2859, "buf[i + 0] = -(int)(USE_FIXED+1U)*buf[i + 0];"},
         {2860, "buf[i + 1] =    (int)(USE_FIXED + 1U)*buf[i + 1];"}});

    // 1 line -> 3 lines: everything after 4493 shifts down by two.
    FileMap fix3 = fix2;
    {
        std::string out;
        for (int i = 1; i <= 4492; ++i) out += "// chart filler " + std::to_string(i) + "\n";
        out += "if (r != null) {\n";
        out += "    Collection c = r.getAnnotations();\n";
        out += "}\n";
        for (int i = 4494; i <= 4500; ++i) out += "// chart filler " + std::to_string(i) + "\n";
        fix3["chart_axis.java"] = out;
    }

    return build_repo(dir, {
                               {"import numeric parsing code", base},
                               {"Fix length check against available bytes", fix1},
                               {"Avoid signed overflow in fixed-point scaling", fix2},
                               {"Guard annotation lookup against missing renderer", fix3},
                           });
}

std::vector<std::string> build_fuzz_repo(const std::filesystem::path& dir) {
    FileMap buggy;
    buggy["main.ml"] =
        "int safe_div(int a, int b) {\n"
        "    return a / b;\n"
        "}\n";
    buggy["tests/test_div.ml"] =
        "void test_div_basic() {\n"
        "    assert safe_div(6, 3) == 2;\n"
        "}\n";

    FileMap fixed = buggy;
    fixed["main.ml"] =
        "int safe_div(int a, int b) {\n"
        "    if (b == 0) {\n"
        "        return 0;\n"
        "    }\n"
        "    return a / b;\n"
        "}\n";

    FileMap docs = fixed;
    docs["README"] = "division helpers\n";

    FileMap hardened = docs;
    hardened["main.ml"] = "// guard against zero divisors\n" + fixed["main.ml"];

    return build_repo(
        dir,
        {
            {"add division helper", buggy},
            {"Guard against zero divisor\n\nFixes: "
             "https://bugs.chromium.org/p/oss-fuzz/issues/detail?id=57986\n",
             fixed},
            {"docs: add notes\n\nOSS-Fuzz issue: 111\nSee also "
             "https://bugs.chromium.org/p/oss-fuzz/issues/detail?id=222\n",
             docs},
            {"Annotate divisor guard\n\nCredit to OSS-Fuzz 3501\n", hardened},
        });
}

void build_vuln_repos(const std::filesystem::path& repos_dir) {
    std::filesystem::remove_all(repos_dir);
    std::filesystem::create_directories(repos_dir);
    auto shas = build_span_repo(repos_dir / "taglib__taglib");
    if (shas != span_repo_shas()) {
        throw pbc::IoError("span repo ids drifted from the recorded fixture");
    }
    std::filesystem::copy(repos_dir / "taglib__taglib", repos_dir / "ffmpeg__ffmpeg",
                          std::filesystem::copy_options::recursive);
    std::filesystem::copy(repos_dir / "taglib__taglib", repos_dir / "jfree__jfreechart",
                          std::filesystem::copy_options::recursive);
}

const std::vector<std::string>& span_repo_shas() {
    static const std::vector<std::string> shas = {
        "00a3701f3743bd19ba6da5694821d0670d2c73b7",
        "0eec2c68ac14e358e540def6cdc377ab844d2f48",
        "8b21cceff74cc52f6867c048da249f112c8f3d87",
        "ca9831a0af7dd6b10c189900f1ee7da90e8a4c61",
    };
    return shas;
}

std::filesystem::path fixtures_dir() {
    return PBC_FIXTURES_DIR;
}

} // namespace testsupport
