#include "pbc/patch.hpp"

#include "pbc/error.hpp"

#include <algorithm>
#include <map>

namespace pbc {
namespace {

// offsets[i] = byte offset where line i+1 starts; one sentinel entry at the end.
std::vector<std::size_t> line_offsets(const std::string& content) {
    std::vector<std::size_t> offs;
    if (!content.empty()) {
        offs.push_back(0);
        for (std::size_t i = 0; i < content.size(); ++i) {
            if (content[i] == '\n' && i + 1 < content.size()) offs.push_back(i + 1);
        }
    }
    offs.push_back(content.size());
    return offs;
}

int hunk_position(const DiffHunk& h) {
    if (h.location.before_span) return h.location.before_span->first;
    return h.location.after_span ? h.location.after_span->first : 0;
}

} // namespace

DiffHunk invert(const DiffHunk& hunk) {
    DiffHunk out = hunk;
    std::swap(out.location.before_span, out.location.after_span);
    std::swap(out.before_text, out.after_text);
    return out;
}

std::string apply_hunks_to_file(const std::string& before, std::vector<DiffHunk> hunks) {
    std::sort(hunks.begin(), hunks.end(), [](const DiffHunk& a, const DiffHunk& b) {
        return hunk_position(a) < hunk_position(b);
    });

    auto offs = line_offsets(before);
    const long total_lines = static_cast<long>(offs.size()) - 1;

    std::string out;
    long cursor = 1; // next before-line to copy
    long delta = 0;  // after-line minus before-line for content above the cursor

    for (const auto& h : hunks) {
        const auto& loc = h.location;
        if (loc.before_span) {
            long b0 = loc.before_span->first;
            long b1 = loc.before_span->second;
            if (b0 < cursor || b1 > total_lines) {
                throw ParseError("hunk out of range or overlapping in " + loc.file_path);
            }
            out.append(before, offs[cursor - 1], offs[b0 - 1] - offs[cursor - 1]);
            out += h.after_text;
            cursor = b1 + 1;
        } else {
            if (!loc.after_span) throw ParseError("hunk with two empty spans in " + loc.file_path);
            // Pure insertion: the before-side anchor line follows from the
            // after-side position and the cumulative line delta so far.
            long anchor = loc.after_span->first - delta - 1;
            if (anchor < cursor - 1 || anchor > total_lines) {
                throw ParseError("insertion anchor out of range in " + loc.file_path);
            }
            out.append(before, offs[cursor - 1], offs[anchor] - offs[cursor - 1]);
            out += h.after_text;
            cursor = anchor + 1;
        }
        delta += static_cast<long>(util::line_count(h.after_text)) -
                 static_cast<long>(util::line_count(h.before_text));
    }
    if (cursor <= total_lines) {
        out.append(before, offs[cursor - 1], before.size() - offs[cursor - 1]);
    }
    return out;
}

FileMap apply_hunks(const FileMap& before, const std::vector<DiffHunk>& hunks) {
    std::map<std::string, std::vector<DiffHunk>> by_file;
    for (const auto& h : hunks) by_file[h.file()].push_back(h);

    FileMap out = before;
    for (auto& [file, file_hunks] : by_file) {
        std::string base;
        if (auto it = before.find(file); it != before.end()) base = it->second;
        std::string patched = apply_hunks_to_file(base, file_hunks);
        bool whole_file_removed = patched.empty() && !base.empty();
        if (whole_file_removed) {
            out.erase(file);
        } else {
            out[file] = std::move(patched);
        }
    }
    return out;
}

FileMap apply_hunks_reverse(const FileMap& after, const std::vector<DiffHunk>& hunks) {
    std::vector<DiffHunk> inverted;
    inverted.reserve(hunks.size());
    for (const auto& h : hunks) inverted.push_back(invert(h));
    return apply_hunks(after, inverted);
}

} // namespace pbc
