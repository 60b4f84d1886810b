#include "pbc/util.hpp"

#include "pbc/error.hpp"

#include <unistd.h>

#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pbc::util {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path.string());
}

Lines Lines::split(const std::string& text) {
    Lines out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.lines.push_back(text.substr(start));
            out.final_newline = false;
            return out;
        }
        out.lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    out.final_newline = true;
    return out;
}

std::string Lines::join() const {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size() || final_newline) out += '\n';
    }
    return out;
}

std::size_t line_count(const std::string& text) {
    if (text.empty()) return 0;
    std::size_t n = 0;
    for (char c : text) {
        if (c == '\n') ++n;
    }
    if (text.back() != '\n') ++n;
    return n;
}

std::string normalize_newlines(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') continue;
            out += '\n';
        } else {
            out += text[i];
        }
    }
    return out;
}

bool valid_hostname(const std::string& host) {
    if (host.empty() || host.size() > 253) return false;
    bool label_start = true;
    char prev = 0;
    for (char c : host) {
        if (c == '.') {
            if (label_start || prev == '-') return false;
            label_start = true;
            prev = c;
            continue;
        }
        bool alnum = std::isalnum(static_cast<unsigned char>(c)) != 0;
        if (label_start) {
            if (!alnum) return false;
            label_start = false;
        } else if (!alnum && c != '-') {
            return false;
        }
        prev = c;
    }
    return !label_start && prev != '-';
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string to_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::optional<int> iso_year(const std::string& date) {
    if (date.size() < 4) return std::nullopt;
    for (int i = 0; i < 4; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(date[i]))) return std::nullopt;
    }
    return (date[0] - '0') * 1000 + (date[1] - '0') * 100 + (date[2] - '0') * 10 + (date[3] - '0');
}

TempDir::TempDir(const std::string& prefix) {
    static std::atomic<std::uint64_t> counter{0};
    auto base = std::filesystem::temp_directory_path();
    std::uint64_t n = counter.fetch_add(1);
    // pid + counter keeps concurrent test binaries apart.
    path_ = base / (prefix + "-" + std::to_string(::getpid()) + "-" + std::to_string(n));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    if (path_.empty()) return;
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_str(const std::string& s) {
    // FNV-1a, then mixed; only used for seed derivation, not identity.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

std::uint64_t Rng::next() {
    state_ = mix64(state_);
    return state_;
}

std::size_t Rng::pick(std::size_t n) {
    return static_cast<std::size_t>(next() % n);
}

} // namespace pbc::util
