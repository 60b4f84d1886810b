#include "pbc/gitminer.hpp"

#include "pbc/error.hpp"
#include "pbc/log.hpp"
#include "pbc/process.hpp"

#include <algorithm>

namespace pbc::git {
namespace {

ProcessResult git(const std::filesystem::path& repo, const std::vector<std::string>& args) {
    std::vector<std::string> argv{"git", "-C", repo.string(), "-c", "core.quotepath=off"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_process(argv);
}

std::string git_or_throw(const std::filesystem::path& repo, const std::vector<std::string>& args,
                         const std::string& what) {
    auto res = git(repo, args);
    if (!res.ok()) {
        throw IoError("git " + what + " failed in " + repo.string() + ": " + util::trim(res.err));
    }
    return res.out;
}

// "a/path" or "b/path" -> "path"; bare "/dev/null" stays as-is.
std::string strip_prefix_path(const std::string& raw) {
    if (raw.size() > 2 && (raw[0] == 'a' || raw[0] == 'b') && raw[1] == '/') {
        return raw.substr(2);
    }
    return raw;
}

struct HunkHeader {
    long before_start = 0;
    long before_count = 0;
    long after_start = 0;
    long after_count = 0;
};

bool parse_hunk_header(const std::string& line, HunkHeader& hdr) {
    // @@ -l[,n] +l[,m] @@ ...
    if (line.rfind("@@ -", 0) != 0) return false;
    std::size_t pos = 4;
    auto read_num = [&](long& value) {
        value = 0;
        bool any = false;
        while (pos < line.size() && isdigit(static_cast<unsigned char>(line[pos]))) {
            value = value * 10 + (line[pos] - '0');
            ++pos;
            any = true;
        }
        return any;
    };
    if (!read_num(hdr.before_start)) return false;
    hdr.before_count = 1;
    if (pos < line.size() && line[pos] == ',') {
        ++pos;
        if (!read_num(hdr.before_count)) return false;
    }
    if (pos + 1 >= line.size() || line[pos] != ' ' || line[pos + 1] != '+') return false;
    pos += 2;
    if (!read_num(hdr.after_start)) return false;
    hdr.after_count = 1;
    if (pos < line.size() && line[pos] == ',') {
        ++pos;
        if (!read_num(hdr.after_count)) return false;
    }
    return true;
}

} // namespace

std::vector<DiffHunk> parse_unified_diff(const std::string& diff_text) {
    std::vector<DiffHunk> hunks;
    auto lines = util::Lines::split(diff_text).lines;

    std::string current_file;
    bool binary = false;
    DiffHunk* open_hunk = nullptr;
    char last_text_side = 0; // '-' or '+', for "\ No newline" attribution

    auto close_hunk = [&]() { open_hunk = nullptr; };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.rfind("diff --git ", 0) == 0) {
            close_hunk();
            current_file.clear();
            binary = false;
            continue;
        }
        if (line.rfind("Binary files ", 0) == 0) {
            binary = true;
            continue;
        }
        if (line.rfind("--- ", 0) == 0) {
            std::string p = strip_prefix_path(line.substr(4));
            if (p != "/dev/null") current_file = p;
            continue;
        }
        if (line.rfind("+++ ", 0) == 0) {
            std::string p = strip_prefix_path(line.substr(4));
            if (p != "/dev/null") current_file = p;
            continue;
        }
        HunkHeader hdr;
        if (parse_hunk_header(line, hdr)) {
            if (binary || current_file.empty()) {
                close_hunk();
                continue;
            }
            DiffHunk hunk;
            hunk.location.file_path = current_file;
            if (hdr.before_count > 0) {
                hunk.location.before_span =
                    std::make_pair(static_cast<int>(hdr.before_start),
                                   static_cast<int>(hdr.before_start + hdr.before_count - 1));
            }
            if (hdr.after_count > 0) {
                hunk.location.after_span =
                    std::make_pair(static_cast<int>(hdr.after_start),
                                   static_cast<int>(hdr.after_start + hdr.after_count - 1));
            }
            hunks.push_back(std::move(hunk));
            open_hunk = &hunks.back();
            last_text_side = 0;
            continue;
        }
        if (!open_hunk) continue;
        if (!line.empty() && line[0] == '-') {
            open_hunk->before_text += line.substr(1);
            open_hunk->before_text += '\n';
            last_text_side = '-';
        } else if (!line.empty() && line[0] == '+') {
            open_hunk->after_text += line.substr(1);
            open_hunk->after_text += '\n';
            last_text_side = '+';
        } else if (line.rfind("\\ No newline", 0) == 0) {
            // The previous -/+ line had no terminating newline in the file.
            std::string& text = last_text_side == '-' ? open_hunk->before_text : open_hunk->after_text;
            if (!text.empty() && text.back() == '\n') text.pop_back();
        } else {
            close_hunk();
        }
    }

    std::sort(hunks.begin(), hunks.end(), [](const DiffHunk& a, const DiffHunk& b) {
        auto pos = [](const DiffHunk& h) {
            return h.location.before_span ? h.location.before_span->first
                                          : (h.location.after_span ? h.location.after_span->first : 0);
        };
        if (a.file() != b.file()) return a.file() < b.file();
        return pos(a) < pos(b);
    });
    return hunks;
}

CommitPair resolve_commit(const std::filesystem::path& repo_path, const std::string& revision_expr) {
    auto rev = git(repo_path, {"rev-parse", "--verify", "--quiet", revision_expr + "^{commit}"});
    if (!rev.ok()) {
        throw RevisionNotFound("revision " + revision_expr + " not found in " + repo_path.string());
    }
    std::string fix = util::trim(rev.out);

    auto parents_out = git(repo_path, {"rev-list", "--parents", "-n", "1", fix});
    if (!parents_out.ok()) {
        throw RevisionNotFound("cannot list parents of " + fix);
    }
    auto fields = util::split(util::trim(parents_out.out), ' ');
    if (fields.size() < 2) {
        throw RootCommit("commit " + fix + " has no parent");
    }
    if (fields.size() > 2) {
        throw MergeCommit("commit " + fix + " is a merge commit");
    }
    return CommitPair{repo_path, fix, fields[1]};
}

std::vector<DiffHunk> diff_hunks(const CommitPair& pair) {
    std::string out = git_or_throw(
        pair.repo_path,
        {"diff", "-U0", "--no-renames", "--no-color", pair.parent_revision, pair.fix_revision},
        "diff");
    return parse_unified_diff(out);
}

namespace {

std::vector<std::string> changed_files(const CommitPair& pair, Side side) {
    // Status letters: A=added, D=deleted, M=modified, T=type change.
    std::string out = git_or_throw(pair.repo_path,
                                   {"diff", "--name-status", "--no-renames", pair.parent_revision,
                                    pair.fix_revision},
                                   "diff --name-status");
    std::vector<std::string> files;
    for (const auto& line : util::Lines::split(out).lines) {
        auto tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string status = line.substr(0, tab);
        std::string path = line.substr(tab + 1);
        if (status == "A" && side == Side::Before) continue;
        if (status == "D" && side == Side::After) continue;
        files.push_back(path);
    }
    return files;
}

std::string show_file(const std::filesystem::path& repo, const std::string& rev, const std::string& path) {
    auto res = git(repo, {"show", rev + ":" + path});
    if (!res.ok()) {
        throw RevisionNotFound("cannot read " + path + " at " + rev);
    }
    return res.out;
}

} // namespace

FileMap snapshot(const CommitPair& pair, Side side) {
    const std::string& rev = side == Side::Before ? pair.parent_revision : pair.fix_revision;
    FileMap tree;
    for (const auto& path : changed_files(pair, side)) {
        tree[path] = show_file(pair.repo_path, rev, path);
    }
    return tree;
}

FileMap tree_at(const std::filesystem::path& repo_path, const std::string& revision) {
    std::string out =
        git_or_throw(repo_path, {"ls-tree", "-r", "--name-only", revision}, "ls-tree");
    FileMap tree;
    for (const auto& path : util::Lines::split(out).lines) {
        if (path.empty()) continue;
        tree[path] = show_file(repo_path, revision, path);
    }
    return tree;
}

std::string commit_date(const std::filesystem::path& repo_path, const std::string& revision) {
    auto out = git(repo_path, {"show", "-s", "--format=%cI", revision});
    if (!out.ok()) throw RevisionNotFound("cannot read date of " + revision);
    return util::trim(out.out);
}

std::vector<CommitMessage> log_messages(const std::filesystem::path& repo_path) {
    std::string out = git_or_throw(
        repo_path, {"log", "--format=%H%x01%B%x02"}, "log");
    std::vector<CommitMessage> result;
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t sep = out.find('\x01', pos);
        if (sep == std::string::npos) break;
        std::size_t end = out.find('\x02', sep);
        if (end == std::string::npos) break;
        CommitMessage cm;
        cm.revision = util::trim(out.substr(pos, sep - pos));
        cm.message = out.substr(sep + 1, end - sep - 1);
        result.push_back(std::move(cm));
        pos = end + 1;
    }
    return result;
}

} // namespace pbc::git
