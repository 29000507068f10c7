#include "common/error.hpp"

namespace tutor {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
        case ErrorCode::EmptyDocument: return "EmptyDocument";
        case ErrorCode::CorruptIndex: return "CorruptIndex";
        case ErrorCode::VersionUnsupported: return "VersionUnsupported";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnknownThread: return "UnknownThread";
        case ErrorCode::UnknownTask: return "UnknownTask";
        case ErrorCode::MissingContext: return "MissingContext";
        case ErrorCode::ContextTooLarge: return "ContextTooLarge";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
        case ErrorCode::ProviderRejected: return "ProviderRejected";
        case ErrorCode::ScriptExhausted: return "ScriptExhausted";
        case ErrorCode::SinkUnavailable: return "SinkUnavailable";
        case ErrorCode::UnsortedInput: return "UnsortedInput";
        case ErrorCode::UnknownCategory: return "UnknownCategory";
        case ErrorCode::UnknownMergedId: return "UnknownMergedId";
        case ErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

}  // namespace tutor
