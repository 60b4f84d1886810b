#pragma once

#include "pbc/model.hpp"
#include "pbc/util.hpp"

#include <vector>

namespace pbc {

// Swapped before/after sides: applying invert(h) re-introduces the bug.
DiffHunk invert(const DiffHunk& hunk);

// Applies fix hunks (before -> after) to one file's content. Hunks must
// belong to this file, be sorted by position and be disjoint.
std::string apply_hunks_to_file(const std::string& before, std::vector<DiffHunk> hunks);

// Applies hunks across a file tree. Pure-insertion hunks may create files;
// a hunk that removes a file's entire content removes the file.
FileMap apply_hunks(const FileMap& before, const std::vector<DiffHunk>& hunks);

// Convenience: apply the inverted hunks, i.e. reconstruct the buggy tree
// from the fixed one.
FileMap apply_hunks_reverse(const FileMap& after, const std::vector<DiffHunk>& hunks);

} // namespace pbc
