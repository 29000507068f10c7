#include "analytics/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <set>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::analytics {

using nlohmann::json;

TagTable load_tags(const std::string& path) {
    TagTable tags;
    if (!std::filesystem::exists(path)) return tags;
    json j = json::parse(text::read_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::InvalidArgument, "tag file must be a JSON object: " + path);
    for (const auto& [id, cat] : j.items()) {
        if (!cat.is_string()) throw Error(ErrorCode::InvalidArgument, "tag for " + id + " must be a string");
        tags[id] = parse_category(cat.get<std::string>());
    }
    return tags;
}

void save_tags(const TagTable& tags, const std::string& path) {
    json j = json::object();
    for (const auto& [id, cat] : tags) j[id] = category_name(cat);
    text::write_file_atomic(path, j.dump(2) + "\n");
}

void tag(TagTable& tags, const MergedFile& merged, const std::string& merged_id, std::string_view category) {
    const auto cat = parse_category(category);
    const bool known = std::any_of(merged.interactions.begin(), merged.interactions.end(),
                                   [&](const MergedInteraction& m) { return m.merged_id == merged_id; });
    if (!known) throw Error(ErrorCode::UnknownMergedId, "unknown merged interaction: " + merged_id);
    tags[merged_id] = cat;
}

CategoryStats category_stats(const MergedFile& merged, const TagTable& tags,
                             const std::optional<std::string>& awareness_filter) {
    std::map<QuestionCategory, std::size_t> counts;
    CategoryStats stats;
    std::set<std::string> seen;
    for (const auto& m : merged.interactions) {
        if (awareness_filter && m.awareness != *awareness_filter) continue;
        if (!seen.insert(m.merged_id).second) continue;
        auto it = tags.find(m.merged_id);
        if (it == tags.end()) {
            ++stats.untagged;
            continue;
        }
        ++counts[it->second];
        ++stats.total;
    }
    for (const auto& [cat, n] : counts) stats.rows.push_back({cat, n});
    std::sort(stats.rows.begin(), stats.rows.end(), [](const CategoryCount& a, const CategoryCount& b) {
        if (a.count != b.count) return a.count > b.count;
        return category_name(a.category) < category_name(b.category);
    });
    return stats;
}

StatsFormat parse_stats_format(std::string_view name) {
    if (name == "table") return StatsFormat::Table;
    if (name == "csv") return StatsFormat::Csv;
    if (name == "json") return StatsFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown format: " + std::string(name));
}

std::string render_stats(const CategoryStats& stats, StatsFormat format) {
    std::string out;
    switch (format) {
        case StatsFormat::Table: {
            char line[64];
            std::snprintf(line, sizeof line, "%-20s %6s\n", "category", "count");
            out += line;
            for (const auto& r : stats.rows) {
                std::snprintf(line, sizeof line, "%-20s %6zu\n", std::string(category_name(r.category)).c_str(), r.count);
                out += line;
            }
            std::snprintf(line, sizeof line, "%-20s %6zu\n", "total", stats.total);
            out += line;
            if (stats.untagged > 0) {
                std::snprintf(line, sizeof line, "%-20s %6zu\n", "untagged", stats.untagged);
                out += line;
            }
            break;
        }
        case StatsFormat::Csv:
            out += "category,count\n";
            for (const auto& r : stats.rows)
                out += std::string(category_name(r.category)) + "," + std::to_string(r.count) + "\n";
            out += "total," + std::to_string(stats.total) + "\n";
            if (stats.untagged > 0) out += "untagged," + std::to_string(stats.untagged) + "\n";
            break;
        case StatsFormat::Json: {
            json rows = json::array();
            for (const auto& r : stats.rows) rows.push_back({{"category", category_name(r.category)}, {"count", r.count}});
            out = json{{"rows", rows}, {"total", stats.total}, {"untagged", stats.untagged}}.dump(2) + "\n";
            break;
        }
    }
    return out;
}

}  // namespace tutor::analytics
