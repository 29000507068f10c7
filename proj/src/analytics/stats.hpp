#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "analytics/categories.hpp"
#include "analytics/merge.hpp"

namespace tutor::analytics {

// merged_id -> category; persisted as a JSON object with sorted keys.
using TagTable = std::map<std::string, QuestionCategory>;

TagTable load_tags(const std::string& path);  // missing file -> empty table
void save_tags(const TagTable& tags, const std::string& path);

// Last write wins. Throws UnknownMergedId / UnknownCategory.
void tag(TagTable& tags, const MergedFile& merged, const std::string& merged_id, std::string_view category);

struct CategoryCount {
    QuestionCategory category;
    std::size_t count = 0;
};

struct CategoryStats {
    std::vector<CategoryCount> rows;  // descending count, ties by name; no zero rows
    std::size_t total = 0;            // tagged interactions counted
    std::size_t untagged = 0;
};

// Optional filter keeps only interactions whose awareness equals the value.
CategoryStats category_stats(const MergedFile& merged, const TagTable& tags,
                             const std::optional<std::string>& awareness_filter = std::nullopt);

enum class StatsFormat { Table, Csv, Json };
StatsFormat parse_stats_format(std::string_view name);
std::string render_stats(const CategoryStats& stats, StatsFormat format);

}  // namespace tutor::analytics
