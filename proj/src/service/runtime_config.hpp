#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "policy/prompt.hpp"
#include "telemetry/cost.hpp"

namespace tutor::service {

struct RuntimeConfig {
    std::uint64_t version = 1;
    policy::AwarenessLevel default_awareness = policy::AwarenessLevel::None;
    double scope_threshold = 0.25;
    std::size_t max_code_lines = 8;
    std::size_t token_budget = 4000;
    std::size_t retrieval_k = 4;
    telemetry::Pricing pricing;
    std::vector<std::string> solution_keywords;
    std::string course_name = "Introduction to Python";
    policy::PromptTemplate system_prompt = policy::PromptTemplate::standard();

    static RuntimeConfig defaults();
};

nlohmann::json to_json(const RuntimeConfig& config);

// Applies a partial update. Every problem is collected into the thrown
// InvalidConfig's field diagnostics; on error `config` is left untouched.
// Returns the names of the fields that were present in the patch.
std::vector<std::string> apply_patch(RuntimeConfig& config, const nlohmann::json& patch);

// Snapshot holder: readers get an immutable shared_ptr, writers swap in a
// fully validated copy.
class ConfigStore {
public:
    explicit ConfigStore(RuntimeConfig initial);

    std::shared_ptr<const RuntimeConfig> snapshot() const;

    struct Update {
        std::shared_ptr<const RuntimeConfig> config;
        std::vector<std::string> changed_fields;
    };
    Update put(const nlohmann::json& patch);

private:
    mutable std::mutex read_mu_;
    std::mutex write_mu_;
    std::shared_ptr<const RuntimeConfig> current_;
};

}  // namespace tutor::service
