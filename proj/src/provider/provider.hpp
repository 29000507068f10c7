#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "common/error.hpp"
#include "policy/prompt.hpp"

namespace tutor::provider {

// Holds a credential without ever printing it.
class Secret {
public:
    Secret() = default;
    explicit Secret(std::string value) : value_(std::move(value)) {}
    const std::string& reveal() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }
    friend std::ostream& operator<<(std::ostream& os, const Secret&) { return os << "<redacted>"; }

private:
    std::string value_;
};

struct ProviderConfig {
    std::string endpoint_url = "https://api.openai.com/v1";
    Secret api_key;
    std::string model_name = "gpt-4o-mini";
    double temperature = 0.2;
    int max_tokens = 800;
    std::chrono::milliseconds request_timeout{30000};
};

// Replaces api_key with $TUTOR_API_KEY when set.
void apply_env_overrides(ProviderConfig& config);

struct Completion {
    std::string text;
    std::size_t prompt_tokens = 0;
    std::size_t completion_tokens = 0;
    long latency_ms = 0;
    std::string provider_id;
    int attempt_count = 1;
    std::vector<long> backoff_ms;  // delay slept before each retry
};

// One request, no retries. Throws Error(ProviderUnavailable) for transient
// failures and Error(ProviderRejected) for permanent ones.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual std::string id() const = 0;
    virtual Completion attempt(const policy::PromptBundle& bundle, std::chrono::milliseconds timeout) = 0;
};

struct RetryPolicy {
    int max_retries = 2;
    std::chrono::milliseconds base_delay{500};
    std::chrono::milliseconds deadline{60000};
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
Sleeper real_sleeper();

// Raised once retries are exhausted (or a permanent failure occurs); keeps
// the attempt log for telemetry.
class ProviderError : public Error {
public:
    ProviderError(const Error& cause, int attempts, std::vector<long> backoff_ms)
        : Error(cause), attempts_(attempts), backoff_ms_(std::move(backoff_ms)) {}
    int attempts() const noexcept { return attempts_; }
    const std::vector<long>& backoff_ms() const noexcept { return backoff_ms_; }

private:
    int attempts_;
    std::vector<long> backoff_ms_;
};

struct AttemptLog {
    int attempts = 0;
    std::vector<long> backoff_ms;
};

// Runs `fn(timeout)` with exponential backoff (base, 2*base, ...) on
// ProviderUnavailable, bounded by max_retries and the overall deadline.
// A Retry-After hint lengthens the wait. Throws ProviderError.
template <class Fn>
auto with_retries(const RetryPolicy& policy, const Sleeper& sleep, AttemptLog& log, Fn&& fn) {
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    auto delay = policy.base_delay;
    for (;;) {
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
        const auto remaining = std::max(std::chrono::milliseconds(1), policy.deadline - elapsed);
        ++log.attempts;
        try {
            return fn(remaining);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ProviderUnavailable || log.attempts > policy.max_retries)
                throw ProviderError(e, log.attempts, log.backoff_ms);
            auto wait = delay;
            if (auto hint = e.retry_after_ms(); hint && std::chrono::milliseconds(*hint) > wait)
                wait = std::chrono::milliseconds(*hint);
            const auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started);
            if (spent + wait >= policy.deadline) throw ProviderError(e, log.attempts, log.backoff_ms);
            log.backoff_ms.push_back(static_cast<long>(wait.count()));
            sleep(wait);
            delay *= 2;
        }
    }
}

// The service-facing completion client.
class CompletionProvider {
public:
    CompletionProvider(std::shared_ptr<ChatBackend> backend, RetryPolicy retry = {}, Sleeper sleep = real_sleeper());

    Completion complete(const policy::PromptBundle& bundle) const;
    const ChatBackend& backend() const noexcept { return *backend_; }

private:
    std::shared_ptr<ChatBackend> backend_;
    RetryPolicy retry_;
    Sleeper sleep_;
};

}  // namespace tutor::provider
