#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pbc {

// path -> raw bytes; the common currency between the git miner, the
// adapters and the patcher.
using FileMap = std::map<std::string, std::string>;

namespace util {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

// Lines without terminators plus a flag for a missing final newline, so
// that join(split(x)) == x byte-for-byte.
struct Lines {
    std::vector<std::string> lines;
    bool final_newline = true; // meaningless when lines is empty

    std::string join() const;
    static Lines split(const std::string& text);
};

// Number of lines in a text block ("" -> 0, "a" -> 1, "a\n" -> 1, "a\nb" -> 2).
std::size_t line_count(const std::string& text);

std::string normalize_newlines(const std::string& text);

bool valid_hostname(const std::string& host);

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::string to_lower(std::string s);

// Leading 4-digit year of an ISO-8601-ish date string, if any.
std::optional<int> iso_year(const std::string& date);

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& prefix = "pbc");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    TempDir(TempDir&& other) noexcept : path_(std::move(other.path_)) { other.path_.clear(); }

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// Deterministic 64-bit mixer used to derive per-candidate RNG streams.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_str(const std::string& s);

// Minimal deterministic PRNG (splitmix64); identical output on every
// platform for the same seed, unlike <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    // Uniform-ish pick in [0, n); n must be > 0.
    std::size_t pick(std::size_t n);

private:
    std::uint64_t state_;
};

} // namespace util
} // namespace pbc
