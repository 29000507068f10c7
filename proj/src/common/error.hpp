#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tutor {

enum class ErrorCode {
    InvalidArgument,
    Io,
    EmptyDocument,
    CorruptIndex,
    VersionUnsupported,
    DimensionMismatch,
    UnknownThread,
    UnknownTask,
    MissingContext,
    ContextTooLarge,
    InvalidConfig,
    ProviderUnavailable,
    ProviderRejected,
    ScriptExhausted,
    SinkUnavailable,
    UnsortedInput,
    UnknownCategory,
    UnknownMergedId,
    Internal,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the core; the code decides how callers (C API,
// HTTP layer) surface it.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Field-level diagnostics (InvalidConfig).
    const std::map<std::string, std::string>& fields() const noexcept { return fields_; }
    Error& with_field(std::string name, std::string problem) {
        fields_.emplace(std::move(name), std::move(problem));
        return *this;
    }

    // Present when a remote provider supplied Retry-After.
    std::optional<long> retry_after_ms() const noexcept { return retry_after_ms_; }
    Error& with_retry_after(long ms) {
        retry_after_ms_ = ms;
        return *this;
    }

private:
    ErrorCode code_;
    std::map<std::string, std::string> fields_;
    std::optional<long> retry_after_ms_;
};

}  // namespace tutor
