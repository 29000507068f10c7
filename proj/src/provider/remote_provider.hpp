#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "kb/embedding.hpp"
#include "provider/provider.hpp"

namespace tutor::provider {

struct ParsedUrl {
    std::string scheme_host_port;  // "https://api.example.com:443"
    std::string base_path;         // "/v1" (no trailing slash)
};
ParsedUrl parse_endpoint(const std::string& url);

// Chat-completions request body. System text and context sections go into the
// leading system message, history maps to user/assistant turns, and the
// student's message is the final user turn.
nlohmann::json chat_request_body(const policy::PromptBundle& bundle, const ProviderConfig& config);

// Removes any occurrence of the key from text taken from a remote response.
std::string scrub_secret(std::string text, const Secret& key);

// POST {endpoint}/chat/completions. 429, 5xx and transport errors are
// transient; other non-2xx statuses are rejections.
class RemoteChatBackend final : public ChatBackend {
public:
    explicit RemoteChatBackend(ProviderConfig config);

    std::string id() const override { return "remote:" + config_.model_name; }
    Completion attempt(const policy::PromptBundle& bundle, std::chrono::milliseconds timeout) override;

private:
    ProviderConfig config_;
    ParsedUrl url_;
};

// POST {endpoint}/embeddings, retried with the same policy as completions.
class RemoteEmbeddingProvider final : public kb::EmbeddingProvider {
public:
    RemoteEmbeddingProvider(ProviderConfig config, std::size_t dimension, RetryPolicy retry = {},
                            Sleeper sleep = real_sleeper());

    std::size_t dimension() const override { return dimension_; }
    std::string id() const override { return "remote:" + config_.model_name; }
    kb::Embedding embed(std::string_view text) const override;

private:
    ProviderConfig config_;
    ParsedUrl url_;
    std::size_t dimension_;
    RetryPolicy retry_;
    Sleeper sleep_;
};

}  // namespace tutor::provider
