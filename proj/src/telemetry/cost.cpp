#include "telemetry/cost.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "common/error.hpp"

namespace tutor::telemetry {

std::string Micros::to_string() const {
    const auto whole = value / 1'000'000;
    const auto frac = std::llabs(value % 1'000'000);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%06lld", value < 0 && whole == 0 ? "-" : "", static_cast<long long>(whole),
                  static_cast<long long>(frac));
    return buf;
}

Micros Micros::from_double(double amount) {
    if (!std::isfinite(amount)) throw Error(ErrorCode::InvalidArgument, "amount must be finite");
    return {std::llround(amount * 1e6)};
}

Micros compute_cost(std::uint64_t prompt_tokens, std::uint64_t completion_tokens, const Pricing& pricing) {
    if (pricing.prompt_per_1m.value < 0 || pricing.completion_per_1m.value < 0)
        throw Error(ErrorCode::InvalidArgument, "prices must be non-negative");
    using u128 = unsigned __int128;
    // Units of 1e-12 currency.
    const u128 total = static_cast<u128>(prompt_tokens) * static_cast<u128>(pricing.prompt_per_1m.value) +
                       static_cast<u128>(completion_tokens) * static_cast<u128>(pricing.completion_per_1m.value);
    constexpr u128 kScale = 1'000'000;
    u128 quotient = total / kScale;
    const u128 remainder = total % kScale;
    if (remainder * 2 > kScale || (remainder * 2 == kScale && (quotient & 1) == 1)) ++quotient;
    if (quotient > static_cast<u128>(INT64_MAX)) throw Error(ErrorCode::InvalidArgument, "cost overflows");
    return {static_cast<std::int64_t>(quotient)};
}

}  // namespace tutor::telemetry
