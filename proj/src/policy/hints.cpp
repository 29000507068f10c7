#include "policy/hints.hpp"

#include <algorithm>

#include "common/text.hpp"

namespace tutor::policy {

std::vector<std::string> default_solution_keywords() {
    return {"implement", "write the code", "full solution", "solve it for me", "give me the code"};
}

bool classify_solution_request(std::string_view message, const std::vector<std::string>& keywords) {
    const std::string lowered = text::to_lower_ascii(message);
    return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& k) {
        return !k.empty() && lowered.find(text::to_lower_ascii(k)) != std::string::npos;
    });
}

HintState update_hint_state(HintState state, bool is_solution_request) {
    if (!is_solution_request) return {};
    ++state.consecutive_solution_requests;
    state.level = std::min(3, 1 + state.consecutive_solution_requests);
    return state;
}

}  // namespace tutor::policy
