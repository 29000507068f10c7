#include "service/bootstrap.hpp"

#include <filesystem>

#include "common/error.hpp"
#include "common/text.hpp"
#include "provider/remote_provider.hpp"

namespace tutor::service {

using nlohmann::json;
namespace fs = std::filesystem;

ServiceFileConfig parse_service_config(const json& doc, const std::string& base_dir) {
    if (!doc.is_object()) throw Error(ErrorCode::InvalidConfig, "service config must be a JSON object");
    ServiceFileConfig cfg;
    if (doc.contains("runtime")) apply_patch(cfg.runtime, doc["runtime"]);
    if (doc.contains("system_prompt_file")) {
        fs::path p = doc["system_prompt_file"].get<std::string>();
        if (p.is_relative()) p = fs::path(base_dir) / p;
        cfg.runtime.system_prompt.text = text::read_file(p.string());
    }
    if (doc.contains("provider")) cfg.provider = doc["provider"];
    if (doc.contains("embedding")) cfg.embedding = doc["embedding"];
    if (doc.contains("telemetry")) {
        const auto& t = doc["telemetry"];
        const auto fsync = t.value("fsync", "never");
        if (fsync == "every_record")
            cfg.telemetry.fsync = telemetry::FsyncPolicy::EveryRecord;
        else if (fsync != "never")
            throw Error(ErrorCode::InvalidConfig, "telemetry.fsync must be never or every_record");
        cfg.telemetry.queue_capacity = t.value("queue_capacity", cfg.telemetry.queue_capacity);
    }
    if (doc.contains("listen")) {
        const auto& l = doc["listen"];
        cfg.host = l.value("host", cfg.host);
        cfg.port = l.value("port", cfg.port);
        cfg.threads = l.value("threads", cfg.threads);
    }
    return cfg;
}

ServiceFileConfig load_service_config(const std::string& path) {
    json doc = json::parse(text::read_file(path), nullptr, false);
    if (doc.is_discarded()) throw Error(ErrorCode::InvalidConfig, "service config is not valid JSON: " + path);
    try {
        return parse_service_config(doc, fs::path(path).parent_path().string());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("service config: ") + e.what());
    }
}

namespace {

provider::ProviderConfig provider_config(const json& spec) {
    provider::ProviderConfig pc;
    pc.endpoint_url = spec.value("endpoint_url", pc.endpoint_url);
    pc.api_key = provider::Secret(spec.value("api_key", std::string()));
    pc.model_name = spec.value("model_name", pc.model_name);
    pc.temperature = spec.value("temperature", pc.temperature);
    pc.max_tokens = spec.value("max_tokens", pc.max_tokens);
    pc.request_timeout = std::chrono::milliseconds(spec.value("timeout_ms", 30000));
    provider::apply_env_overrides(pc);
    return pc;
}

}  // namespace

provider::RetryPolicy make_retry_policy(const json& spec) {
    provider::RetryPolicy r;
    r.max_retries = spec.value("max_retries", r.max_retries);
    r.base_delay = std::chrono::milliseconds(spec.value("base_delay_ms", 500));
    r.deadline = std::chrono::milliseconds(spec.value("deadline_ms", 60000));
    return r;
}

std::shared_ptr<const kb::EmbeddingProvider> make_embedder(const json& spec) {
    const auto kind = spec.value("kind", "offline");
    const auto dim = spec.value("dimension", std::size_t{256});
    if (kind == "offline") return std::make_shared<kb::HashedTfEmbedder>(dim);
    if (kind == "remote")
        return std::make_shared<provider::RemoteEmbeddingProvider>(provider_config(spec), dim, make_retry_policy(spec));
    throw Error(ErrorCode::InvalidConfig, "unknown embedding kind: " + kind);
}

std::shared_ptr<provider::ChatBackend> make_chat_backend(const json& spec) {
    const auto kind = spec.value("kind", "remote");
    if (kind == "remote") return std::make_shared<provider::RemoteChatBackend>(provider_config(spec));
    if (kind == "mock") {
        std::vector<provider::ScriptStep> steps;
        for (const auto& s : spec.value("script", json::array())) {
            if (s.is_string())
                steps.push_back(provider::ScriptStep::respond(s.get<std::string>()));
            else if (s.is_object() && s.value("fail", false))
                steps.push_back(provider::ScriptStep::fail());
            else if (s.is_object() && s.value("reject", false))
                steps.push_back(provider::ScriptStep::reject());
            else
                throw Error(ErrorCode::InvalidConfig, "bad mock script step: " + s.dump());
        }
        return std::make_shared<provider::MockBackend>(std::move(steps), spec.value("cycle", false));
    }
    throw Error(ErrorCode::InvalidConfig, "unknown provider kind: " + kind);
}

std::shared_ptr<Service> open_service(const ServiceFileConfig& config, const ServicePaths& paths) {
    ServiceDeps deps;
    deps.index = std::make_shared<kb::SharedIndex>(kb::load_index(paths.index));
    deps.embedder = make_embedder(config.embedding);
    deps.completions = std::make_shared<provider::CompletionProvider>(make_chat_backend(config.provider),
                                                                     make_retry_policy(config.provider));
    deps.sink = std::make_shared<telemetry::JsonlSink>(paths.log_dir, config.telemetry);
    deps.tasks = paths.tasks.empty() ? std::make_shared<TaskCatalog>() : TaskCatalog::from_file(paths.tasks);
    deps.config = config.runtime;
    return std::make_shared<Service>(std::move(deps));
}

}  // namespace tutor::service
