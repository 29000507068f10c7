#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "kb/embedding.hpp"
#include "kb/index.hpp"
#include "policy/guardrail.hpp"
#include "provider/provider.hpp"
#include "retrieval/retrieval.hpp"
#include "service/runtime_config.hpp"
#include "service/sessions.hpp"
#include "service/tasks.hpp"
#include "telemetry/sink.hpp"

namespace tutor::service {

inline constexpr std::string_view kRejectionNotice =
    "This question is outside the scope of the course materials, so the tutor cannot answer it. "
    "Please ask about the topics, examples or assignments covered in the course.";

struct MessageRequest {
    std::string text;
    std::optional<policy::AwarenessLevel> awareness;  // defaults to RuntimeConfig::default_awareness
    std::optional<std::string> task_id;
    std::optional<std::string> code;
};

MessageRequest parse_message_request(const nlohmann::json& body);

struct TutorResponse {
    std::string text;
    retrieval::ScopeDecision scope;
    policy::LeakReport leak;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
    telemetry::Micros cost;
    std::string interaction_id;
};

nlohmann::json to_json(const TutorResponse& r);

struct ServiceDeps {
    std::shared_ptr<kb::SharedIndex> index;
    std::shared_ptr<const kb::EmbeddingProvider> embedder;
    std::shared_ptr<const provider::CompletionProvider> completions;
    std::shared_ptr<telemetry::Sink> sink;
    std::shared_ptr<TaskCatalog> tasks;
    RuntimeConfig config = RuntimeConfig::defaults();
};

// The request pipeline: embed the question, retrieve, gate on scope, update
// the hint state, assemble the prompt, complete, enforce the guardrail,
// commit history, log. Requests on one thread run in arrival order; a failed
// request leaves the thread's history untouched.
class Service {
public:
    explicit Service(ServiceDeps deps);

    std::string create_session();
    TutorResponse post_message(const std::string& thread_id, const MessageRequest& request);
    std::vector<Message> history(const std::string& thread_id) const;
    policy::HintState hint_state(const std::string& thread_id) const;

    std::shared_ptr<const RuntimeConfig> config() const { return configs_.snapshot(); }
    std::shared_ptr<const RuntimeConfig> put_config(const nlohmann::json& patch);

    std::vector<TaskDescription> list_tasks() const { return deps_.tasks->list(); }
    TaskDescription get_task(const std::string& id) const { return deps_.tasks->get(id); }
    void reload_tasks() { deps_.tasks->reload(); }

    std::uint64_t index_version() const { return deps_.index->version(); }
    telemetry::Sink& sink() { return *deps_.sink; }

private:
    SysTime next_record_time(SessionThread& session);

    ServiceDeps deps_;
    ConfigStore configs_;
    SessionStore sessions_;
};

}  // namespace tutor::service
