#include "provider/provider.hpp"

#include <cstdlib>
#include <thread>

namespace tutor::provider {

void apply_env_overrides(ProviderConfig& config) {
    if (const char* key = std::getenv("TUTOR_API_KEY"); key != nullptr && *key != '\0')
        config.api_key = Secret(key);
}

Sleeper real_sleeper() {
    return [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

CompletionProvider::CompletionProvider(std::shared_ptr<ChatBackend> backend, RetryPolicy retry, Sleeper sleep)
    : backend_(std::move(backend)), retry_(retry), sleep_(std::move(sleep)) {
    if (!backend_) throw Error(ErrorCode::InvalidArgument, "completion provider needs a backend");
}

Completion CompletionProvider::complete(const policy::PromptBundle& bundle) const {
    AttemptLog log;
    Completion c = with_retries(retry_, sleep_, log,
                                [&](std::chrono::milliseconds timeout) { return backend_->attempt(bundle, timeout); });
    c.attempt_count = log.attempts;
    c.backoff_ms = log.backoff_ms;
    return c;
}

}  // namespace tutor::provider
