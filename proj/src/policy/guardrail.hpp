#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "policy/prompt.hpp"
#include "provider/provider.hpp"

namespace tutor::policy {

// 1-based, inclusive; fences are part of the block, line_count counts only
// non-blank content lines.
struct CodeBlock {
    std::size_t start_line = 0;
    std::size_t end_line = 0;
    std::size_t line_count = 0;

    bool operator==(const CodeBlock&) const = default;
};

enum class GuardAction { None, Regenerated, Redacted };
std::string_view guard_action_name(GuardAction a);  // none|regenerated|redacted

struct LeakReport {
    bool leaked = false;
    std::vector<CodeBlock> offending_blocks;
    GuardAction action = GuardAction::None;
};

inline constexpr std::size_t kDefaultMaxCodeLines = 8;
inline constexpr std::string_view kRedactionPlaceholder =
    "[code withheld \xE2\x80\x94 try building this step yourself; ask for a hint]";

// Fenced (```) blocks, plus indented runs (4 spaces or a tab) that start
// after a blank line outside any fence. An unclosed fence runs to the end.
std::vector<CodeBlock> find_code_blocks(std::string_view text);

// Per-block rule: a block leaks when it has more than max_code_lines
// non-blank lines.
LeakReport detect_solution_leak(std::string_view text, std::size_t max_code_lines = kDefaultMaxCodeLines);

std::string redact_blocks(std::string_view text, const std::vector<CodeBlock>& blocks);

struct GuardrailOutcome {
    std::string text;
    LeakReport report;  // leaked/offending_blocks describe the first reply
    std::optional<provider::Completion> regeneration;
};

// Clean replies pass through untouched. A leaking reply gets one
// regeneration with an extra system reminder; if that also leaks, its
// offending blocks are replaced by the placeholder.
GuardrailOutcome enforce_guardrail(std::string response_text, LeakReport leak,
                                   const provider::CompletionProvider& provider, const PromptBundle& bundle,
                                   std::size_t max_code_lines = kDefaultMaxCodeLines);

}  // namespace tutor::policy
