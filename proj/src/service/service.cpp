#include "service/service.hpp"

#include <chrono>

#include "common/error.hpp"
#include "common/text.hpp"
#include "policy/hints.hpp"

namespace tutor::service {

using nlohmann::json;

MessageRequest parse_message_request(const json& body) {
    if (!body.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
    MessageRequest req;
    if (!body.contains("text") || !body["text"].is_string())
        throw Error(ErrorCode::InvalidArgument, "\"text\" must be a string");
    req.text = body["text"].get<std::string>();
    if (body.contains("awareness") && !body["awareness"].is_null()) {
        if (!body["awareness"].is_string()) throw Error(ErrorCode::InvalidArgument, "\"awareness\" must be a string");
        req.awareness = policy::parse_awareness(body["awareness"].get<std::string>());
    }
    if (body.contains("task_id") && !body["task_id"].is_null()) {
        if (!body["task_id"].is_string()) throw Error(ErrorCode::InvalidArgument, "\"task_id\" must be a string");
        req.task_id = body["task_id"].get<std::string>();
    }
    if (body.contains("code") && !body["code"].is_null()) {
        if (!body["code"].is_string()) throw Error(ErrorCode::InvalidArgument, "\"code\" must be a string");
        req.code = body["code"].get<std::string>();
    }
    return req;
}

json to_json(const TutorResponse& r) {
    return {{"text", r.text},
            {"scope", {{"verdict", retrieval::verdict_name(r.scope.verdict)}, {"top_score", r.scope.top_score}}},
            {"leak", {{"leaked", r.leak.leaked}, {"action", policy::guard_action_name(r.leak.action)}}},
            {"usage",
             {{"prompt_tokens", r.prompt_tokens},
              {"completion_tokens", r.completion_tokens},
              {"cost", r.cost.as_double()}}},
            {"interaction_id", r.interaction_id}};
}

Service::Service(ServiceDeps deps) : deps_(std::move(deps)), configs_(deps_.config) {
    if (!deps_.index || !deps_.embedder || !deps_.completions || !deps_.sink || !deps_.tasks)
        throw Error(ErrorCode::InvalidArgument, "service dependencies are incomplete");
    const auto dim = deps_.index->read([](const kb::VectorIndex& i) { return i.dimension(); });
    if (dim != 0 && dim != deps_.embedder->dimension())
        throw Error(ErrorCode::DimensionMismatch, "index dimension " + std::to_string(dim) +
                                                      " does not match embedder dimension " +
                                                      std::to_string(deps_.embedder->dimension()));
}

std::string Service::create_session() { return sessions_.create(); }

std::vector<Message> Service::history(const std::string& thread_id) const {
    auto session = sessions_.find(thread_id);
    std::lock_guard lock(session->turn);
    return session->history;
}

policy::HintState Service::hint_state(const std::string& thread_id) const {
    auto session = sessions_.find(thread_id);
    std::lock_guard lock(session->turn);
    return session->hint_state;
}

std::shared_ptr<const RuntimeConfig> Service::put_config(const json& patch) {
    auto update = configs_.put(patch);
    json rec = {{"record_type", "config_changed"},
                {"timestamp", format_rfc3339(now_utc())},
                {"config_version", update.config->version},
                {"changed_fields", update.changed_fields}};
    deps_.sink->record(rec);
    return update.config;
}

SysTime Service::next_record_time(SessionThread& session) {
    auto t = now_utc();
    if (t <= session.last_record_time) t = session.last_record_time + std::chrono::microseconds(1);
    session.last_record_time = t;
    return t;
}

TutorResponse Service::post_message(const std::string& thread_id, const MessageRequest& request) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    const auto cfg = configs_.snapshot();
    auto session = sessions_.find(thread_id);

    if (text::is_blank(request.text)) throw Error(ErrorCode::InvalidArgument, "message text must not be empty");
    const auto awareness = request.awareness.value_or(cfg->default_awareness);
    std::optional<policy::TaskContext> task;
    if (policy::includes_task(awareness)) {
        if (!request.task_id)
            throw Error(ErrorCode::MissingContext, "awareness '" + std::string(policy::awareness_name(awareness)) +
                                                       "' requires task_id");
        const auto t = deps_.tasks->get(*request.task_id);
        task = policy::TaskContext{t.task_id, t.title, t.statement};
    }
    if (policy::includes_code(awareness) && !request.code)
        throw Error(ErrorCode::MissingContext,
                    "awareness '" + std::string(policy::awareness_name(awareness)) + "' requires code");

    std::lock_guard turn(session->turn);

    // Retrieval runs on the raw question only; chunks are copied out so the
    // index lock is not held across the provider call.
    const auto query = kb::embed_text(request.text, *deps_.embedder);
    std::vector<kb::CourseChunk> chunk_copies;
    std::vector<double> scores;
    deps_.index->read([&](const kb::VectorIndex& index) {
        for (const auto& sc : retrieval::retrieve(index, query, cfg->retrieval_k)) {
            chunk_copies.push_back(*sc.chunk);
            scores.push_back(sc.score);
        }
        return 0;
    });
    std::vector<retrieval::ScoredChunk> retrieved;
    for (std::size_t i = 0; i < chunk_copies.size(); ++i) retrieved.push_back({&chunk_copies[i], scores[i]});
    const auto scope = retrieval::scope_check(retrieved, cfg->scope_threshold);

    telemetry::InteractionRecord rec;
    rec.interaction_id = random_id();
    rec.thread_id = thread_id;
    rec.user_message = request.text;
    rec.awareness = std::string(policy::awareness_name(awareness));
    if (task) rec.task_id = task->task_id;
    rec.scope_verdict = std::string(retrieval::verdict_name(scope.verdict));
    rec.top_score = scope.top_score;
    rec.config_version = cfg->version;

    TutorResponse response;
    response.scope = scope;
    response.interaction_id = rec.interaction_id;

    auto commit = [&](const std::string& reply) {
        const auto now = now_utc();
        session->history.push_back({policy::Role::Student, request.text, now});
        session->history.push_back({policy::Role::Tutor, reply, now});
        if (task) session->active_task_id = task->task_id;
    };
    auto elapsed_ms = [&] {
        return static_cast<long>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count());
    };

    if (scope.verdict == retrieval::Verdict::OutOfScope) {
        response.text = std::string(kRejectionNotice);
        commit(response.text);
        rec.prompt_text = request.text;
        rec.response_text = response.text;
        rec.latency_ms = elapsed_ms();
        rec.timestamp = next_record_time(*session);
        deps_.sink->record(rec);
        return response;
    }

    const bool wants_solution = policy::classify_solution_request(request.text, cfg->solution_keywords);
    const auto next_hint = policy::update_hint_state(session->hint_state, wants_solution);

    std::vector<policy::Turn> turns;
    turns.reserve(session->history.size());
    for (const auto& m : session->history) turns.push_back({m.role, m.text});

    policy::AssemblyOptions options;
    options.system_template = cfg->system_prompt;
    options.course_name = cfg->course_name;
    options.token_budget = cfg->token_budget;
    policy::AssemblyInput input;
    input.thread_id = thread_id;
    input.history = turns;
    input.user_message = request.text;
    input.awareness = awareness;
    input.task = task ? &*task : nullptr;
    input.code = request.code ? &*request.code : nullptr;
    input.chunks = retrieved;
    input.hint_level = next_hint.level;
    const auto bundle = policy::assemble_prompt(input, options);
    rec.prompt_text = policy::serialize_prompt(bundle);

    provider::Completion first;
    policy::GuardrailOutcome guarded;
    try {
        first = deps_.completions->complete(bundle);
        guarded = policy::enforce_guardrail(first.text, policy::detect_solution_leak(first.text, cfg->max_code_lines),
                                            *deps_.completions, bundle, cfg->max_code_lines);
    } catch (const provider::ProviderError& e) {
        rec.record_type = "provider_failure";
        rec.error = std::string(error_code_name(e.code())) + ": " + e.what();
        rec.attempts = e.attempts();
        rec.retry_backoff_ms = e.backoff_ms();
        rec.prompt_tokens = first.prompt_tokens;
        rec.completion_tokens = first.completion_tokens;
        rec.cost = telemetry::compute_cost(rec.prompt_tokens, rec.completion_tokens, cfg->pricing);
        rec.latency_ms = elapsed_ms();
        rec.timestamp = next_record_time(*session);
        deps_.sink->record(rec);
        throw;
    }

    session->hint_state = next_hint;
    commit(guarded.text);

    rec.response_text = guarded.text;
    rec.leak_action = std::string(policy::guard_action_name(guarded.report.action));
    rec.prompt_tokens = first.prompt_tokens;
    rec.completion_tokens = first.completion_tokens;
    rec.attempts = first.attempt_count;
    rec.retry_backoff_ms = first.backoff_ms;
    if (guarded.regeneration) {
        rec.prompt_tokens += guarded.regeneration->prompt_tokens;
        rec.completion_tokens += guarded.regeneration->completion_tokens;
        rec.attempts += guarded.regeneration->attempt_count;
        rec.retry_backoff_ms.insert(rec.retry_backoff_ms.end(), guarded.regeneration->backoff_ms.begin(),
                                    guarded.regeneration->backoff_ms.end());
    }
    rec.cost = telemetry::compute_cost(rec.prompt_tokens, rec.completion_tokens, cfg->pricing);
    rec.latency_ms = elapsed_ms();
    rec.timestamp = next_record_time(*session);
    deps_.sink->record(rec);

    response.text = guarded.text;
    response.leak = guarded.report;
    response.prompt_tokens = rec.prompt_tokens;
    response.completion_tokens = rec.completion_tokens;
    response.cost = rec.cost;
    return response;
}

}  // namespace tutor::service
