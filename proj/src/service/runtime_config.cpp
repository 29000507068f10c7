#include "service/runtime_config.hpp"

#include <cmath>
#include <map>

#include "common/error.hpp"
#include "policy/hints.hpp"

namespace tutor::service {

using nlohmann::json;

RuntimeConfig RuntimeConfig::defaults() {
    RuntimeConfig c;
    c.solution_keywords = policy::default_solution_keywords();
    return c;
}

json to_json(const RuntimeConfig& c) {
    return {{"version", c.version},
            {"default_awareness", policy::awareness_name(c.default_awareness)},
            {"scope_threshold", c.scope_threshold},
            {"max_code_lines", c.max_code_lines},
            {"token_budget", c.token_budget},
            {"retrieval_k", c.retrieval_k},
            {"pricing",
             {{"prompt_price_per_1m", c.pricing.prompt_per_1m.as_double()},
              {"completion_price_per_1m", c.pricing.completion_per_1m.as_double()}}},
            {"solution_keywords", c.solution_keywords},
            {"course_name", c.course_name},
            {"system_prompt_version", c.system_prompt.version},
            {"system_prompt_template", c.system_prompt.text}};
}

namespace {

std::optional<std::size_t> positive_integer(const json& v) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() > 0) return static_cast<std::size_t>(v.get<std::int64_t>());
    return std::nullopt;
}

std::optional<telemetry::Micros> price(const json& v) {
    if (!v.is_number()) return std::nullopt;
    const double d = v.get<double>();
    if (!std::isfinite(d) || d < 0) return std::nullopt;
    return telemetry::Micros::from_double(d);
}

}  // namespace

std::vector<std::string> apply_patch(RuntimeConfig& config, const json& patch) {
    if (!patch.is_object()) throw Error(ErrorCode::InvalidConfig, "config patch must be a JSON object");
    RuntimeConfig next = config;
    std::map<std::string, std::string> problems;
    std::vector<std::string> changed;

    for (const auto& [key, value] : patch.items()) {
        changed.push_back(key);
        if (key == "default_awareness") {
            try {
                next.default_awareness = policy::parse_awareness(value.is_string() ? value.get<std::string>() : "");
            } catch (const Error&) {
                problems[key] = "must be one of none, task, code, task_and_code";
            }
        } else if (key == "scope_threshold") {
            if (value.is_number() && value.get<double>() > 0.0 && value.get<double>() <= 1.0)
                next.scope_threshold = value.get<double>();
            else
                problems[key] = "must be a number in (0, 1]";
        } else if (key == "max_code_lines" || key == "token_budget" || key == "retrieval_k") {
            auto n = positive_integer(value);
            if (!n)
                problems[key] = "must be a positive integer";
            else if (key == "max_code_lines")
                next.max_code_lines = *n;
            else if (key == "token_budget")
                next.token_budget = *n;
            else
                next.retrieval_k = *n;
        } else if (key == "pricing") {
            if (!value.is_object()) {
                problems[key] = "must be an object";
                continue;
            }
            for (const auto& [pk, pv] : value.items()) {
                auto p = price(pv);
                if (pk != "prompt_price_per_1m" && pk != "completion_price_per_1m")
                    problems["pricing." + pk] = "unknown field";
                else if (!p)
                    problems["pricing." + pk] = "must be a non-negative number";
                else if (pk == "prompt_price_per_1m")
                    next.pricing.prompt_per_1m = *p;
                else
                    next.pricing.completion_per_1m = *p;
            }
        } else if (key == "solution_keywords") {
            bool ok = value.is_array() && !value.empty();
            if (ok)
                for (const auto& k : value) ok = ok && k.is_string() && !k.get<std::string>().empty();
            if (ok)
                next.solution_keywords = value.get<std::vector<std::string>>();
            else
                problems[key] = "must be a non-empty array of non-empty strings";
        } else if (key == "course_name") {
            if (value.is_string() && !value.get<std::string>().empty())
                next.course_name = value.get<std::string>();
            else
                problems[key] = "must be a non-empty string";
        } else if (key == "system_prompt_version") {
            if (value.is_string() && !value.get<std::string>().empty())
                next.system_prompt.version = value.get<std::string>();
            else
                problems[key] = "must be a non-empty string";
        } else if (key == "system_prompt_template") {
            if (value.is_string() && !value.get<std::string>().empty())
                next.system_prompt.text = value.get<std::string>();
            else
                problems[key] = "must be a non-empty string";
        } else if (key == "version") {
            problems[key] = "is managed by the server";
        } else {
            problems[key] = "unknown field";
        }
    }

    if (!problems.empty()) {
        Error err(ErrorCode::InvalidConfig, "invalid config: " + problems.begin()->first + " " + problems.begin()->second);
        for (auto& [field, why] : problems) err.with_field(field, why);
        throw err;
    }
    config = std::move(next);
    return changed;
}

ConfigStore::ConfigStore(RuntimeConfig initial) : current_(std::make_shared<const RuntimeConfig>(std::move(initial))) {}

std::shared_ptr<const RuntimeConfig> ConfigStore::snapshot() const {
    std::lock_guard lock(read_mu_);
    return current_;
}

ConfigStore::Update ConfigStore::put(const json& patch) {
    std::lock_guard writer(write_mu_);
    RuntimeConfig next = *snapshot();
    auto changed = apply_patch(next, patch);
    ++next.version;
    auto published = std::make_shared<const RuntimeConfig>(std::move(next));
    {
        std::lock_guard lock(read_mu_);
        current_ = published;
    }
    return {std::move(published), std::move(changed)};
}

}  // namespace tutor::service
