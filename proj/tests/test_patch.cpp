#include "pbc/patch.hpp"

#include <doctest.h>

using namespace pbc;

namespace {

DiffHunk make_hunk(const std::string& file, LineSpan before, LineSpan after,
                   const std::string& before_text, const std::string& after_text) {
    DiffHunk h;
    h.location.file_path = file;
    h.location.before_span = before;
    h.location.after_span = after;
    h.before_text = before_text;
    h.after_text = after_text;
    return h;
}

} // namespace

TEST_CASE("single line replacement") {
    std::string before = "a\nb\nc\n";
    auto h = make_hunk("f", {{2, 2}}, {{2, 2}}, "b\n", "B\n");
    CHECK(apply_hunks_to_file(before, {h}) == "a\nB\nc\n");
}

TEST_CASE("pure insertion anchors after the preceding line") {
    std::string before = "a\nc\n";
    auto h = make_hunk("f", std::nullopt, {{2, 2}}, "", "b\n");
    CHECK(apply_hunks_to_file(before, {h}) == "a\nb\nc\n");

    // Insertion at the top of the file.
    auto top = make_hunk("f", std::nullopt, {{1, 1}}, "", "z\n");
    CHECK(apply_hunks_to_file(before, {top}) == "z\na\nc\n");
}

TEST_CASE("pure deletion") {
    std::string before = "a\nb\nc\n";
    auto h = make_hunk("f", {{2, 2}}, std::nullopt, "b\n", "");
    CHECK(apply_hunks_to_file(before, {h}) == "a\nc\n");
}

TEST_CASE("multiple hunks shift later anchors") {
    std::string before = "1\n2\n3\n4\n5\n";
    // Replace line 2 with two lines, then insert after original line 4.
    auto h1 = make_hunk("f", {{2, 2}}, {{2, 3}}, "2\n", "2a\n2b\n");
    auto h2 = make_hunk("f", std::nullopt, {{6, 6}}, "", "4x\n");
    CHECK(apply_hunks_to_file(before, {h1, h2}) == "1\n2a\n2b\n3\n4\n4x\n5\n");
}

TEST_CASE("missing final newline survives the round trip") {
    std::string before = "a\nb";
    auto h = make_hunk("f", {{2, 2}}, {{2, 2}}, "b", "B");
    std::string after = apply_hunks_to_file(before, {h});
    CHECK(after == "a\nB");
    FileMap tree{{"f", after}};
    CHECK(apply_hunks_reverse(tree, {h}).at("f") == before);
}

TEST_CASE("tree-level apply creates and removes files") {
    FileMap before{{"keep.txt", "same\n"}, {"gone.txt", "x\ny\n"}};
    auto add = make_hunk("new.txt", std::nullopt, {{1, 1}}, "", "hello\n");
    auto del = make_hunk("gone.txt", {{1, 2}}, std::nullopt, "x\ny\n", "");
    FileMap after = apply_hunks(before, {add, del});
    CHECK(after.count("new.txt") == 1);
    CHECK(after.at("new.txt") == "hello\n");
    CHECK(after.count("gone.txt") == 0);
    CHECK(after.at("keep.txt") == "same\n");

    FileMap back = apply_hunks_reverse(after, {add, del});
    CHECK(back == before);
}

TEST_CASE("overlapping hunks are rejected") {
    std::string before = "a\nb\nc\n";
    auto h1 = make_hunk("f", {{1, 2}}, {{1, 2}}, "a\nb\n", "A\nB\n");
    auto h2 = make_hunk("f", {{2, 3}}, {{2, 3}}, "b\nc\n", "B\nC\n");
    CHECK_THROWS_AS(apply_hunks_to_file(before, {h1, h2}), ParseError);
}
