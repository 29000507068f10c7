#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "common/clock.hpp"
#include "telemetry/cost.hpp"

namespace tutor::telemetry {

// record_type distinguishes the three kinds of lines in the log:
// "interaction" (one per answered or rejected message), "provider_failure"
// and "config_changed".
struct InteractionRecord {
    std::string record_type = "interaction";
    std::string interaction_id;
    SysTime timestamp{};
    std::string thread_id;
    std::string awareness;
    std::optional<std::string> task_id;
    std::string user_message;  // the student's raw text
    std::string prompt_text;
    std::string response_text;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
    Micros cost;
    long latency_ms = 0;
    std::string scope_verdict;
    double top_score = 0.0;
    std::string leak_action = "none";
    std::uint64_t config_version = 0;
    int attempts = 0;
    std::vector<long> retry_backoff_ms;
    std::optional<std::string> error;
};

nlohmann::json to_json(const InteractionRecord& rec);
InteractionRecord record_from_json(const nlohmann::json& j);

}  // namespace tutor::telemetry
