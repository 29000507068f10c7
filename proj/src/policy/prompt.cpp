#include "policy/prompt.hpp"

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::policy {

std::string_view awareness_name(AwarenessLevel level) {
    switch (level) {
        case AwarenessLevel::None: return "none";
        case AwarenessLevel::Task: return "task";
        case AwarenessLevel::Code: return "code";
        case AwarenessLevel::TaskAndCode: return "task_and_code";
    }
    return "none";
}

AwarenessLevel parse_awareness(std::string_view name) {
    // "task_and_code", "TaskAndCode" and "task-and-code" are all accepted.
    std::string key;
    for (char c : text::to_lower_ascii(name))
        if (c != '_' && c != '-' && c != ' ') key += c;
    if (key == "none") return AwarenessLevel::None;
    if (key == "task") return AwarenessLevel::Task;
    if (key == "code") return AwarenessLevel::Code;
    if (key == "taskandcode") return AwarenessLevel::TaskAndCode;
    throw Error(ErrorCode::InvalidArgument, "unknown awareness level: " + std::string(name));
}

std::string_view role_name(Role r) { return r == Role::Student ? "student" : "tutor"; }

TokenEstimator default_estimator() {
    return [](std::string_view s) { return text::estimate_tokens(s); };
}

std::vector<Turn> truncate_history(std::span<const Turn> history, std::size_t token_budget,
                                   const TokenEstimator& estimator) {
    std::size_t used = 0;
    std::size_t keep = 0;
    // Walk backwards; the first turn that does not fit ends the suffix.
    for (auto it = history.rbegin(); it != history.rend(); ++it) {
        const std::size_t cost = estimator(it->text);
        if (used + cost > token_budget) break;
        used += cost;
        ++keep;
    }
    return {history.end() - static_cast<std::ptrdiff_t>(keep), history.end()};
}

PromptTemplate PromptTemplate::standard() {
    PromptTemplate t;
    t.version = "v1";
    t.text =
        "You are a patient programming tutor for the course \"{course_name}\".\n"
        "Rules: answer only from the provided course material; do not provide complete solutions; "
        "respond with hints and guiding questions.\n"
        "If the course material does not cover the question, say that it is outside the course scope.\n"
        "Use only concepts, methods and terminology that appear in the course material.\n"
        "Current hint level: {hint_level} of 3.\n"
        "Level 1: a conceptual nudge or a guiding question.\n"
        "Level 2: a concrete hint that names the relevant construct and where to apply it.\n"
        "Level 3: a step-by-step outline in prose, still leaving the code to the student.";
    return t;
}

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
        s.replace(pos, from.size(), to);
}

}  // namespace

std::string PromptTemplate::render(std::string_view course_name, int hint_level) const {
    std::string out = text;
    const bool has_level_slot = out.find("{hint_level}") != std::string::npos;
    replace_all(out, "{course_name}", course_name);
    replace_all(out, "{hint_level}", std::to_string(hint_level));
    if (text::to_lower_ascii(out).find(kGroundingInstruction) == std::string::npos) {
        out += "\nRules: ";
        out += kGroundingInstruction;
        out += '.';
    }
    if (!has_level_slot) out += "\nCurrent hint level: " + std::to_string(hint_level) + " of 3.";
    return out;
}

PromptBundle assemble_prompt(const AssemblyInput& input, const AssemblyOptions& options) {
    const bool want_task = includes_task(input.awareness);
    const bool want_code = includes_code(input.awareness);
    if (want_task && input.task == nullptr)
        throw Error(ErrorCode::MissingContext, "awareness '" + std::string(awareness_name(input.awareness)) +
                                                   "' requires a task description");
    if (want_code && input.code == nullptr)
        throw Error(ErrorCode::MissingContext, "awareness '" + std::string(awareness_name(input.awareness)) +
                                                   "' requires a code snapshot");

    PromptBundle bundle;
    bundle.thread_id = input.thread_id;
    bundle.system_text = options.system_template.render(options.course_name, input.hint_level);
    bundle.user_message = std::string(input.user_message);

    std::vector<ContextSection> chunk_sections;
    for (const auto& sc : input.chunks)
        chunk_sections.push_back({"course_material " + sc.chunk->chunk_id, sc.chunk->text});
    std::vector<ContextSection> live_sections;
    if (want_task)
        live_sections.push_back({"task " + input.task->task_id, input.task->title + "\n" + input.task->statement});
    if (want_code) live_sections.push_back({"code", *input.code});

    const auto& est = options.estimator;
    std::size_t fixed = est(bundle.system_text) + est(bundle.user_message);
    for (const auto& s : live_sections) fixed += est(s.text);
    std::size_t chunk_cost = 0;
    for (const auto& s : chunk_sections) chunk_cost += est(s.text);
    // Lowest-ranked material goes first when the budget is tight.
    while (!chunk_sections.empty() && fixed + chunk_cost > options.token_budget) {
        chunk_cost -= est(chunk_sections.back().text);
        chunk_sections.pop_back();
    }
    fixed += chunk_cost;
    if (fixed > options.token_budget)
        throw Error(ErrorCode::ContextTooLarge, "prompt needs " + std::to_string(fixed) +
                                                    " tokens without history; budget is " +
                                                    std::to_string(options.token_budget));

    bundle.context_sections = std::move(chunk_sections);
    for (auto& s : live_sections) bundle.context_sections.push_back(std::move(s));
    bundle.history = truncate_history(input.history, options.token_budget - fixed, est);
    bundle.token_estimate = fixed;
    for (const auto& t : bundle.history) bundle.token_estimate += est(t.text);
    return bundle;
}

std::string serialize_prompt(const PromptBundle& bundle) {
    std::string out;
    out += "### system\n";
    out += bundle.system_text;
    out += "\n\n";
    for (const auto& s : bundle.context_sections) {
        out += "### " + s.label + "\n";
        out += s.text;
        out += "\n\n";
    }
    out += "### history\n";
    for (const auto& t : bundle.history) {
        out += role_name(t.role);
        out += ": ";
        out += t.text;
        out += '\n';
    }
    out += "\n### student message\n";
    out += bundle.user_message;
    out += '\n';
    return out;
}

}  // namespace tutor::policy
