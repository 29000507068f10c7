#include "analytics/categories.hpp"

#include <cctype>
#include <string>

#include "common/error.hpp"

namespace tutor::analytics {

std::string_view category_name(QuestionCategory c) {
    switch (c) {
        case QuestionCategory::GiveExample: return "GiveExample";
        case QuestionCategory::FollowUp: return "FollowUp";
        case QuestionCategory::CourseMaterial: return "CourseMaterial";
        case QuestionCategory::CodeCorrectness: return "CodeCorrectness";
        case QuestionCategory::ExplainCode: return "ExplainCode";
        case QuestionCategory::ExplainConcept: return "ExplainConcept";
        case QuestionCategory::ExplainTaskDetail: return "ExplainTaskDetail";
        case QuestionCategory::HowTo: return "HowTo";
        case QuestionCategory::Implement: return "Implement";
        case QuestionCategory::Unrelated: return "Unrelated";
        case QuestionCategory::CodeOnly: return "CodeOnly";
        case QuestionCategory::Misc: return "Misc";
    }
    return "Misc";
}

namespace {

std::string fold(std::string_view s) {
    std::string out;
    for (unsigned char c : s)
        if (c != ' ' && c != '_' && c != '-') out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

}  // namespace

QuestionCategory parse_category(std::string_view name) {
    const auto wanted = fold(name);
    for (auto c : kAllCategories)
        if (fold(category_name(c)) == wanted) return c;
    throw Error(ErrorCode::UnknownCategory, "unknown category: " + std::string(name));
}

}  // namespace tutor::analytics
