#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tutor::text {

// ceil(chars / 4); the default token estimator throughout.
inline std::size_t estimate_tokens(std::string_view s) { return (s.size() + 3) / 4; }

std::string to_lower_ascii(std::string_view s);
bool is_blank(std::string_view s);
std::vector<std::string> split_lines(std::string_view s);
std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, std::string_view contents);

// Largest position <= pos that does not split a UTF-8 sequence.
std::size_t utf8_floor(std::string_view s, std::size_t pos);

}  // namespace tutor::text
