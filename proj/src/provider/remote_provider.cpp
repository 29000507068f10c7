#include "provider/remote_provider.hpp"

#include <httplib.h>

#include <chrono>

namespace tutor::provider {

using nlohmann::json;

ParsedUrl parse_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidArgument, "endpoint URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    ParsedUrl out;
    out.scheme_host_port = url.substr(0, path_start);
    if (path_start != std::string::npos) out.base_path = url.substr(path_start);
    while (!out.base_path.empty() && out.base_path.back() == '/') out.base_path.pop_back();
    return out;
}

json chat_request_body(const policy::PromptBundle& bundle, const ProviderConfig& config) {
    std::string system = bundle.system_text;
    for (const auto& s : bundle.context_sections) {
        system += "\n\n### " + s.label + "\n";
        system += s.text;
    }
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", system}});
    for (const auto& t : bundle.history)
        messages.push_back({{"role", t.role == policy::Role::Student ? "user" : "assistant"}, {"content", t.text}});
    messages.push_back({{"role", "user"}, {"content", bundle.user_message}});
    return {{"model", config.model_name},
            {"temperature", config.temperature},
            {"max_tokens", config.max_tokens},
            {"messages", std::move(messages)}};
}

std::string scrub_secret(std::string text, const Secret& key) {
    if (key.empty()) return text;
    const std::string& k = key.reveal();
    for (auto pos = text.find(k); pos != std::string::npos; pos = text.find(k, pos))
        text.replace(pos, k.size(), "<redacted>");
    return text;
}

namespace {

std::unique_ptr<httplib::Client> make_client(const ParsedUrl& url, const ProviderConfig& config,
                                             std::chrono::milliseconds timeout) {
    auto client = std::make_unique<httplib::Client>(url.scheme_host_port);
    const auto t = std::min(timeout, config.request_timeout);
    const auto secs = static_cast<time_t>(t.count() / 1000);
    const auto usecs = static_cast<time_t>((t.count() % 1000) * 1000);
    client->set_connection_timeout(secs, usecs);
    client->set_read_timeout(secs, usecs);
    client->set_write_timeout(secs, usecs);
    if (!config.api_key.empty()) client->set_bearer_token_auth(config.api_key.reveal());
    return client;
}

// Maps a transport/HTTP outcome to the provider error taxonomy.
json post_json(const ParsedUrl& url, const ProviderConfig& config, const std::string& path, const json& body,
               std::chrono::milliseconds timeout) {
    auto client = make_client(url, config, timeout);
    auto res = client->Post(url.base_path + path, body.dump(), "application/json");
    if (!res)
        throw Error(ErrorCode::ProviderUnavailable, "provider request failed: " + httplib::to_string(res.error()));
    const int status = res->status;
    if (status >= 200 && status < 300) {
        json parsed = json::parse(res->body, nullptr, false);
        if (parsed.is_discarded()) throw Error(ErrorCode::ProviderUnavailable, "provider returned invalid JSON");
        return parsed;
    }
    std::string detail = scrub_secret(res->body.substr(0, 200), config.api_key);
    const std::string message = "provider returned HTTP " + std::to_string(status) + ": " + detail;
    if (status == 429 || status >= 500) {
        Error err(ErrorCode::ProviderUnavailable, message);
        if (res->has_header("Retry-After")) {
            try {
                err.with_retry_after(std::stol(res->get_header_value("Retry-After")) * 1000);
            } catch (const std::exception&) {
                // HTTP-date form is not supported; fall back to the backoff schedule.
            }
        }
        throw err;
    }
    throw Error(ErrorCode::ProviderRejected, message);
}

}  // namespace

RemoteChatBackend::RemoteChatBackend(ProviderConfig config)
    : config_(std::move(config)), url_(parse_endpoint(config_.endpoint_url)) {}

Completion RemoteChatBackend::attempt(const policy::PromptBundle& bundle, std::chrono::milliseconds timeout) {
    const auto started = std::chrono::steady_clock::now();
    json reply = post_json(url_, config_, "/chat/completions", chat_request_body(bundle, config_), timeout);
    Completion c;
    try {
        c.text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        if (reply.contains("usage")) {
            c.prompt_tokens = reply["usage"].value("prompt_tokens", std::size_t{0});
            c.completion_tokens = reply["usage"].value("completion_tokens", std::size_t{0});
        }
    } catch (const json::exception&) {
        throw Error(ErrorCode::ProviderUnavailable, "provider response lacks choices[0].message.content");
    }
    c.latency_ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
    c.provider_id = id();
    return c;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(ProviderConfig config, std::size_t dimension, RetryPolicy retry,
                                                 Sleeper sleep)
    : config_(std::move(config)),
      url_(parse_endpoint(config_.endpoint_url)),
      dimension_(dimension),
      retry_(retry),
      sleep_(std::move(sleep)) {}

kb::Embedding RemoteEmbeddingProvider::embed(std::string_view text) const {
    AttemptLog log;
    return with_retries(retry_, sleep_, log, [&](std::chrono::milliseconds timeout) {
        json body = {{"model", config_.model_name}, {"input", std::string(text)}};
        json reply = post_json(url_, config_, "/embeddings", body, timeout);
        try {
            return reply.at("data").at(0).at("embedding").get<kb::Embedding>();
        } catch (const json::exception&) {
            throw Error(ErrorCode::ProviderUnavailable, "embedding response lacks data[0].embedding");
        }
    });
}

}  // namespace tutor::provider
