#include "analytics/merge.hpp"

#include <algorithm>
#include <tuple>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::analytics {

using nlohmann::json;

std::vector<MergedInteraction> merge_interactions(std::span<const telemetry::InteractionRecord> records,
                                                  std::chrono::microseconds window) {
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& a = records[i - 1];
        const auto& b = records[i];
        if (std::tie(b.thread_id, b.timestamp) < std::tie(a.thread_id, a.timestamp))
            throw Error(ErrorCode::UnsortedInput,
                        "records must be sorted by (thread_id, timestamp); offending record " + b.interaction_id);
    }

    std::vector<MergedInteraction> out;
    const telemetry::InteractionRecord* prev = nullptr;
    for (const auto& r : records) {
        const std::string& text = r.user_message.empty() ? r.prompt_text : r.user_message;
        const bool joins = prev != nullptr && prev->thread_id == r.thread_id && r.timestamp - prev->timestamp <= window;
        if (joins) {
            auto& m = out.back();
            m.constituents.push_back(r.interaction_id);
            m.combined_text += '\n';
            m.combined_text += text;
        } else {
            MergedInteraction m;
            m.merged_id = "m-" + r.interaction_id;
            m.thread_id = r.thread_id;
            m.constituents = {r.interaction_id};
            m.combined_text = text;
            m.first_timestamp = r.timestamp;
            m.awareness = r.awareness;
            out.push_back(std::move(m));
        }
        prev = &r;
    }
    return out;
}

std::vector<telemetry::InteractionRecord> interaction_records(const std::vector<json>& lines) {
    std::vector<telemetry::InteractionRecord> records;
    for (const auto& line : lines) {
        if (line.value("record_type", "interaction") != "interaction") continue;
        try {
            records.push_back(telemetry::record_from_json(line));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::InvalidArgument, std::string("malformed interaction record: ") + e.what());
        }
    }
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.thread_id, a.timestamp) < std::tie(b.thread_id, b.timestamp);
    });
    return records;
}

json to_json(const MergedFile& f) {
    json items = json::array();
    for (const auto& m : f.interactions)
        items.push_back({{"merged_id", m.merged_id},
                         {"thread_id", m.thread_id},
                         {"constituents", m.constituents},
                         {"combined_text", m.combined_text},
                         {"first_timestamp", format_rfc3339(m.first_timestamp)},
                         {"awareness", m.awareness}});
    return {{"window_seconds", f.window_seconds}, {"interactions", items}};
}

MergedFile merged_from_json(const json& j) {
    try {
        MergedFile f;
        f.window_seconds = j.value("window_seconds", 60.0);
        for (const auto& item : j.at("interactions")) {
            MergedInteraction m;
            m.merged_id = item.at("merged_id").get<std::string>();
            m.thread_id = item.at("thread_id").get<std::string>();
            m.constituents = item.at("constituents").get<std::vector<std::string>>();
            m.combined_text = item.value("combined_text", "");
            m.first_timestamp = parse_rfc3339(item.at("first_timestamp").get<std::string>());
            m.awareness = item.value("awareness", "none");
            f.interactions.push_back(std::move(m));
        }
        return f;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed merged file: ") + e.what());
    }
}

void save_merged(const MergedFile& f, const std::string& path) {
    text::write_file_atomic(path, to_json(f).dump(2) + "\n");
}

MergedFile load_merged(const std::string& path) {
    json j = json::parse(text::read_file(path), nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "merged file is not valid JSON: " + path);
    return merged_from_json(j);
}

}  // namespace tutor::analytics
