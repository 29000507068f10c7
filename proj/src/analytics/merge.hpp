#pragma once

#include <chrono>
#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "common/clock.hpp"
#include "telemetry/record.hpp"

namespace tutor::analytics {

struct MergedInteraction {
    std::string merged_id;  // "m-" + first constituent's interaction_id
    std::string thread_id;
    std::vector<std::string> constituents;
    std::string combined_text;  // constituent texts joined by '\n'
    SysTime first_timestamp{};
    std::string awareness;  // of the first constituent

    bool operator==(const MergedInteraction&) const = default;
};

// Within a thread, a record whose timestamp is at most `window` after the
// previous record's joins that record's interaction (chains transitively).
// Input must be sorted by (thread_id, timestamp); throws UnsortedInput.
std::vector<MergedInteraction> merge_interactions(std::span<const telemetry::InteractionRecord> records,
                                                  std::chrono::microseconds window);

// Keeps only "interaction" records and sorts them by (thread_id, timestamp).
std::vector<telemetry::InteractionRecord> interaction_records(const std::vector<nlohmann::json>& lines);

struct MergedFile {
    double window_seconds = 60;
    std::vector<MergedInteraction> interactions;
};

nlohmann::json to_json(const MergedFile& f);
MergedFile merged_from_json(const nlohmann::json& j);
void save_merged(const MergedFile& f, const std::string& path);
MergedFile load_merged(const std::string& path);

}  // namespace tutor::analytics
