#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "retrieval/retrieval.hpp"

namespace tutor::policy {

enum class AwarenessLevel { None, Task, Code, TaskAndCode };

std::string_view awareness_name(AwarenessLevel level);  // none|task|code|task_and_code
AwarenessLevel parse_awareness(std::string_view name);  // case and separators ignored; throws InvalidArgument
inline bool includes_task(AwarenessLevel l) { return l == AwarenessLevel::Task || l == AwarenessLevel::TaskAndCode; }
inline bool includes_code(AwarenessLevel l) { return l == AwarenessLevel::Code || l == AwarenessLevel::TaskAndCode; }

enum class Role { Student, Tutor };
std::string_view role_name(Role r);

struct Turn {
    Role role = Role::Student;
    std::string text;

    bool operator==(const Turn&) const = default;
};

struct ContextSection {
    std::string label;  // "course_material <chunk_id>", "task <task_id>", "code"
    std::string text;

    bool operator==(const ContextSection&) const = default;
};

struct PromptBundle {
    std::string thread_id;  // routing only; never serialised into the prompt
    std::string system_text;
    std::vector<ContextSection> context_sections;
    std::vector<Turn> history;
    std::string user_message;
    std::size_t token_estimate = 0;
};

using TokenEstimator = std::function<std::size_t(std::string_view)>;
TokenEstimator default_estimator();  // ceil(chars / 4)

// Keeps the longest suffix of whole turns whose estimate fits the budget.
std::vector<Turn> truncate_history(std::span<const Turn> history, std::size_t token_budget,
                                   const TokenEstimator& estimator);

inline constexpr std::string_view kGroundingInstruction =
    "answer only from the provided course material; do not provide complete solutions; "
    "respond with hints and guiding questions";

// System prompt text with {course_name} and {hint_level} placeholders.
struct PromptTemplate {
    std::string version = "v1";
    std::string text;

    static PromptTemplate standard();
    // Renders placeholders; appends the grounding instruction or hint level
    // if a custom template omits them.
    std::string render(std::string_view course_name, int hint_level) const;
};

struct TaskContext {
    std::string task_id;
    std::string title;
    std::string statement;
};

struct AssemblyOptions {
    PromptTemplate system_template = PromptTemplate::standard();
    std::string course_name = "Introduction to Python";
    std::size_t token_budget = 4000;
    TokenEstimator estimator = default_estimator();
};

struct AssemblyInput {
    std::string thread_id;
    std::span<const Turn> history;
    std::string_view user_message;
    AwarenessLevel awareness = AwarenessLevel::None;
    const TaskContext* task = nullptr;
    const std::string* code = nullptr;
    std::span<const retrieval::ScoredChunk> chunks;
    int hint_level = 1;
};

// Section order: system, retrieved chunks, task, code, history, user message.
// Throws MissingContext when the awareness level needs absent task/code and
// ContextTooLarge when even an empty history cannot fit the budget.
PromptBundle assemble_prompt(const AssemblyInput& input, const AssemblyOptions& options);

// Human-readable rendering with "### " section headers, used for telemetry
// and for order/soundness checks.
std::string serialize_prompt(const PromptBundle& bundle);

}  // namespace tutor::policy
