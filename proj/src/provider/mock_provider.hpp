#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "provider/provider.hpp"

namespace tutor::provider {

struct ScriptStep {
    enum class Kind { Respond, Fail, Reject };
    Kind kind = Kind::Respond;
    std::string text;

    static ScriptStep respond(std::string t) { return {Kind::Respond, std::move(t)}; }
    static ScriptStep fail() { return {Kind::Fail, {}}; }
    static ScriptStep reject() { return {Kind::Reject, {}}; }
};

// Replays a fixed script. Each conversation thread (bundle.thread_id) has its
// own cursor, so concurrent threads see the same deterministic sequence.
// Token counts are ceil(chars / 4) of the serialised prompt and the reply.
class MockBackend final : public ChatBackend {
public:
    explicit MockBackend(std::vector<ScriptStep> script, bool cycle = false);

    std::string id() const override { return "mock"; }
    Completion attempt(const policy::PromptBundle& bundle, std::chrono::milliseconds timeout) override;

    std::size_t calls() const;
    std::vector<policy::PromptBundle> received() const;

private:
    std::vector<ScriptStep> script_;
    bool cycle_;
    mutable std::mutex mu_;
    std::map<std::string, std::size_t> cursors_;
    std::vector<policy::PromptBundle> received_;
};

}  // namespace tutor::provider
