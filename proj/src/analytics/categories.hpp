#pragma once

#include <array>
#include <string_view>

namespace tutor::analytics {

// Question taxonomy used when hand-coding merged interactions.
enum class QuestionCategory {
    GiveExample,
    FollowUp,
    CourseMaterial,
    CodeCorrectness,
    ExplainCode,
    ExplainConcept,
    ExplainTaskDetail,
    HowTo,
    Implement,
    Unrelated,
    CodeOnly,
    Misc,
};

inline constexpr std::array kAllCategories = {
    QuestionCategory::GiveExample,    QuestionCategory::FollowUp,          QuestionCategory::CourseMaterial,
    QuestionCategory::CodeCorrectness, QuestionCategory::ExplainCode,      QuestionCategory::ExplainConcept,
    QuestionCategory::ExplainTaskDetail, QuestionCategory::HowTo,          QuestionCategory::Implement,
    QuestionCategory::Unrelated,      QuestionCategory::CodeOnly,          QuestionCategory::Misc,
};

std::string_view category_name(QuestionCategory c);
// Case-insensitive; ignores spaces, '_' and '-'. Throws UnknownCategory.
QuestionCategory parse_category(std::string_view name);

}  // namespace tutor::analytics
