#pragma once

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace testsupport {

// Scratch directory removed on scope exit.
class TempDir {
public:
    TempDir() {
        std::string tmpl = (std::filesystem::temp_directory_path() / "tutor-test-XXXXXX").string();
        if (!::mkdtemp(tmpl.data())) std::abort();
        path_ = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str(const std::string& child = {}) const { return child.empty() ? path_.string() : (path_ / child).string(); }

private:
    std::filesystem::path path_;
};

inline const char* const kWords[] = {
    "list",   "loop",    "variable", "function", "return", "dictionary", "key",    "value",  "string",
    "index",  "slice",   "append",   "tuple",    "set",    "module",     "import", "error",  "exception",
    "while",  "for",     "range",    "print",    "input",  "integer",    "float",  "boolean", "condition",
    "branch", "argument", "parameter", "scope",  "local",  "global",     "class",  "object", "method",
    "file",   "read",    "write",    "count",    "sum",    "average",    "sort",   "reverse", "split",
    "join",   "format",  "debug",    "test",     "assert",
};
inline constexpr std::size_t kWordCount = sizeof(kWords) / sizeof(kWords[0]);

// Prose-ish text with sentences, paragraph breaks and the odd multi-byte char.
inline std::string random_text(std::mt19937& rng, std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> word(0, kWordCount - 1);
    std::uniform_int_distribution<int> roll(0, 99);
    const std::size_t target = len(rng);
    std::string s;
    while (s.size() < target) {
        s += kWords[word(rng)];
        const int r = roll(rng);
        if (r < 8) s += ". ";
        else if (r < 10) s += "?\n";
        else if (r < 13) s += ".\n\n";
        else if (r < 15) s += " \xC3\xA9t\xC3\xA9 ";
        else if (r < 16) s += " \xE2\x86\x92 ";
        else s += ' ';
    }
    return s;
}

}  // namespace testsupport
