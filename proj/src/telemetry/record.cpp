#include "telemetry/record.hpp"

namespace tutor::telemetry {

using nlohmann::json;

json to_json(const InteractionRecord& rec) {
    json j = {{"record_type", rec.record_type},
              {"interaction_id", rec.interaction_id},
              {"timestamp", format_rfc3339(rec.timestamp)},
              {"thread_id", rec.thread_id},
              {"awareness", rec.awareness},
              {"task_id", rec.task_id ? json(*rec.task_id) : json(nullptr)},
              {"user_message", rec.user_message},
              {"prompt_text", rec.prompt_text},
              {"response_text", rec.response_text},
              {"prompt_tokens", rec.prompt_tokens},
              {"completion_tokens", rec.completion_tokens},
              {"cost", rec.cost.as_double()},
              {"latency_ms", rec.latency_ms},
              {"scope_verdict", rec.scope_verdict},
              {"top_score", rec.top_score},
              {"leak_action", rec.leak_action},
              {"config_version", rec.config_version},
              {"attempts", rec.attempts},
              {"retry_backoff_ms", rec.retry_backoff_ms}};
    if (rec.error) j["error"] = *rec.error;
    return j;
}

InteractionRecord record_from_json(const json& j) {
    InteractionRecord rec;
    rec.record_type = j.value("record_type", "interaction");
    rec.interaction_id = j.at("interaction_id").get<std::string>();
    rec.timestamp = parse_rfc3339(j.at("timestamp").get<std::string>());
    rec.thread_id = j.at("thread_id").get<std::string>();
    rec.awareness = j.value("awareness", "none");
    if (j.contains("task_id") && j["task_id"].is_string()) rec.task_id = j["task_id"].get<std::string>();
    rec.user_message = j.value("user_message", "");
    rec.prompt_text = j.value("prompt_text", "");
    rec.response_text = j.value("response_text", "");
    rec.prompt_tokens = j.value("prompt_tokens", std::uint64_t{0});
    rec.completion_tokens = j.value("completion_tokens", std::uint64_t{0});
    rec.cost = Micros::from_double(j.value("cost", 0.0));
    rec.latency_ms = j.value("latency_ms", 0L);
    rec.scope_verdict = j.value("scope_verdict", "");
    rec.top_score = j.value("top_score", 0.0);
    rec.leak_action = j.value("leak_action", "none");
    rec.config_version = j.value("config_version", std::uint64_t{0});
    rec.attempts = j.value("attempts", 0);
    if (j.contains("retry_backoff_ms")) rec.retry_backoff_ms = j["retry_backoff_ms"].get<std::vector<long>>();
    if (j.contains("error") && j["error"].is_string()) rec.error = j["error"].get<std::string>();
    return rec;
}

}  // namespace tutor::telemetry
