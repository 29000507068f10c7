#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tutor::policy {

std::vector<std::string> default_solution_keywords();

// Case-insensitive substring match against any keyword or phrase.
bool classify_solution_request(std::string_view message, const std::vector<std::string>& keywords);

struct HintState {
    int level = 1;  // 1..3
    int consecutive_solution_requests = 0;

    bool operator==(const HintState&) const = default;
};

// level = min(3, 1 + trailing run of solution requests).
HintState update_hint_state(HintState state, bool is_solution_request);

}  // namespace tutor::policy
