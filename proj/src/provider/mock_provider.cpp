#include "provider/mock_provider.hpp"

#include "common/text.hpp"

namespace tutor::provider {

MockBackend::MockBackend(std::vector<ScriptStep> script, bool cycle) : script_(std::move(script)), cycle_(cycle) {
    if (script_.empty()) throw Error(ErrorCode::InvalidArgument, "mock provider script must not be empty");
}

Completion MockBackend::attempt(const policy::PromptBundle& bundle, std::chrono::milliseconds) {
    ScriptStep step;
    {
        std::lock_guard lock(mu_);
        received_.push_back(bundle);
        auto& cursor = cursors_[bundle.thread_id];
        if (cursor >= script_.size()) {
            if (!cycle_)
                throw Error(ErrorCode::ScriptExhausted,
                            "mock script exhausted after " + std::to_string(script_.size()) + " calls");
            cursor = 0;
        }
        step = script_[cursor++];
    }
    switch (step.kind) {
        case ScriptStep::Kind::Fail:
            throw Error(ErrorCode::ProviderUnavailable, "mock provider: scripted transient failure");
        case ScriptStep::Kind::Reject:
            throw Error(ErrorCode::ProviderRejected, "mock provider: scripted rejection");
        case ScriptStep::Kind::Respond: break;
    }
    Completion c;
    c.text = step.text;
    c.prompt_tokens = text::estimate_tokens(policy::serialize_prompt(bundle));
    c.completion_tokens = text::estimate_tokens(c.text);
    c.provider_id = id();
    return c;
}

std::size_t MockBackend::calls() const {
    std::lock_guard lock(mu_);
    return received_.size();
}

std::vector<policy::PromptBundle> MockBackend::received() const {
    std::lock_guard lock(mu_);
    return received_;
}

}  // namespace tutor::provider
