#pragma once

#include "pbc/util.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace testsupport {

// One commit: full desired tree state plus a message. Dates and identity
// are fixed so commit ids are reproducible across machines.
struct CommitSpec {
    std::string message;
    pbc::FileMap tree;
};

// Builds a git repo at dir (created fresh) and returns the commit ids in
// order.
std::vector<std::string> build_repo(const std::filesystem::path& dir,
                                    const std::vector<CommitSpec>& commits);

// A repo with three fix commits whose diffs sit at known line spans:
//   commits[0] base
//   commits[1] one-line replacement at line 366 of taglib_file.cpp
//   commits[2] two-line replacement at 2859-2860 of audio_decoder.c
//   commits[3] 1 -> 3 line replacement at 4493 of chart_axis.java
std::vector<std::string> build_span_repo(const std::filesystem::path& dir);

// A repo holding a small interpreted project:
//   commits[0] buggy division helper
//   commits[1] fix, message cites fuzzing issue 57986
//   commits[2] docs change citing unknown issues 111 and 222
//   commits[3] comment change crediting issue 3501
std::vector<std::string> build_fuzz_repo(const std::filesystem::path& dir);

// Checkouts named <owner>__<name> for the recorded vulnerability fixture:
// taglib__taglib, ffmpeg__ffmpeg, jfree__jfreechart (all copies of the
// span repo).
void build_vuln_repos(const std::filesystem::path& repos_dir);

// Expected commit ids of the span repo, as embedded in the recorded
// vulnerability pages. Tests assert the regenerated repo matches.
const std::vector<std::string>& span_repo_shas();

std::filesystem::path fixtures_dir();

} // namespace testsupport
