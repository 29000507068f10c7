#include "policy/guardrail.hpp"

#include "common/text.hpp"

namespace tutor::policy {

std::string_view guard_action_name(GuardAction a) {
    switch (a) {
        case GuardAction::None: return "none";
        case GuardAction::Regenerated: return "regenerated";
        case GuardAction::Redacted: return "redacted";
    }
    return "none";
}

namespace {

bool is_fence(const std::string& line) {
    const auto start = line.find_first_not_of(' ');
    return start != std::string::npos && start <= 3 && line.compare(start, 3, "```") == 0;
}

bool is_indented(const std::string& line) {
    return !text::is_blank(line) && (line.rfind("    ", 0) == 0 || line.rfind('\t', 0) == 0);
}

}  // namespace

std::vector<CodeBlock> find_code_blocks(std::string_view body) {
    const auto lines = text::split_lines(body);
    std::vector<CodeBlock> blocks;
    std::size_t i = 0;
    while (i < lines.size()) {
        if (is_fence(lines[i])) {
            CodeBlock b;
            b.start_line = i + 1;
            std::size_t j = i + 1;
            for (; j < lines.size() && !is_fence(lines[j]); ++j)
                if (!text::is_blank(lines[j])) ++b.line_count;
            b.end_line = std::min(j, lines.size() - 1) + 1;
            blocks.push_back(b);
            i = j + 1;
            continue;
        }
        const bool after_blank = i == 0 || text::is_blank(lines[i - 1]);
        if (after_blank && is_indented(lines[i])) {
            CodeBlock b;
            b.start_line = i + 1;
            std::size_t last = i;
            std::size_t j = i;
            while (j < lines.size() && !is_fence(lines[j]) && (is_indented(lines[j]) || text::is_blank(lines[j]))) {
                if (is_indented(lines[j])) {
                    ++b.line_count;
                    last = j;
                }
                ++j;
            }
            b.end_line = last + 1;
            blocks.push_back(b);
            i = last + 1;
            continue;
        }
        ++i;
    }
    return blocks;
}

LeakReport detect_solution_leak(std::string_view text, std::size_t max_code_lines) {
    LeakReport report;
    for (const auto& b : find_code_blocks(text))
        if (b.line_count > max_code_lines) report.offending_blocks.push_back(b);
    report.leaked = !report.offending_blocks.empty();
    return report;
}

std::string redact_blocks(std::string_view body, const std::vector<CodeBlock>& blocks) {
    const auto lines = text::split_lines(body);
    std::string out;
    std::size_t next = 0;  // index into blocks, which are in line order
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        if (next < blocks.size() && lineno >= blocks[next].start_line) {
            out += kRedactionPlaceholder;
            out += '\n';
            i = blocks[next].end_line - 1;
            ++next;
            continue;
        }
        out += lines[i];
        out += '\n';
    }
    if (!body.empty() && body.back() != '\n' && !out.empty()) out.pop_back();
    return out;
}

GuardrailOutcome enforce_guardrail(std::string response_text, LeakReport leak,
                                   const provider::CompletionProvider& provider, const PromptBundle& bundle,
                                   std::size_t max_code_lines) {
    GuardrailOutcome outcome;
    if (!leak.leaked) {
        leak.action = GuardAction::None;
        outcome.text = std::move(response_text);
        outcome.report = std::move(leak);
        return outcome;
    }

    PromptBundle retry = bundle;
    retry.system_text += "\n\nReminder: your previous reply contained a complete code solution. Do not write "
                         "any code block longer than " +
                         std::to_string(max_code_lines) +
                         " lines. Give hints, guiding questions and conceptual explanations instead.";
    outcome.regeneration = provider.complete(retry);
    const std::string& second = outcome.regeneration->text;
    const LeakReport second_leak = detect_solution_leak(second, max_code_lines);
    if (!second_leak.leaked) {
        outcome.text = second;
        leak.action = GuardAction::Regenerated;
    } else {
        outcome.text = redact_blocks(second, second_leak.offending_blocks);
        leak.action = GuardAction::Redacted;
    }
    outcome.report = std::move(leak);
    return outcome;
}

}  // namespace tutor::policy
