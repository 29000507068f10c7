#pragma once

#include <cstdint>
#include <string>

namespace tutor::telemetry {

// Currency amount in millionths (6 decimal places).
struct Micros {
    std::int64_t value = 0;

    double as_double() const { return static_cast<double>(value) / 1e6; }
    std::string to_string() const;  // "0.007500"
    static Micros from_double(double amount);  // rounds to the nearest micro

    auto operator<=>(const Micros&) const = default;
};

// Prices are per one million tokens.
struct Pricing {
    Micros prompt_per_1m;
    Micros completion_per_1m;

    bool operator==(const Pricing&) const = default;
};

// prompt_tokens * prompt_price / 1e6 + completion_tokens * completion_price / 1e6,
// rounded half-to-even to 6 decimals. Exact integer arithmetic.
Micros compute_cost(std::uint64_t prompt_tokens, std::uint64_t completion_tokens, const Pricing& pricing);

}  // namespace tutor::telemetry
