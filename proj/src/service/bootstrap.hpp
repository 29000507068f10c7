#pragma once

#include <memory>
#include <nlohmann/json.hpp>
#include <string>

#include "provider/mock_provider.hpp"
#include "service/service.hpp"

namespace tutor::service {

// Parsed service configuration file. Shape:
// {
//   "runtime":   { RuntimeConfig fields, as accepted by PUT /api/config },
//   "system_prompt_file": "prompt.txt",            (optional, relative to the file)
//   "provider":  { "kind": "remote" | "mock", ... },
//   "embedding": { "kind": "offline", "dimension": 256 } | { "kind": "remote", ... },
//   "telemetry": { "fsync": "never" | "every_record", "queue_capacity": 4096 },
//   "listen":    { "host": "127.0.0.1", "port": 8080, "threads": 16 }
// }
struct ServiceFileConfig {
    RuntimeConfig runtime = RuntimeConfig::defaults();
    nlohmann::json provider = {{"kind", "remote"}};
    nlohmann::json embedding = {{"kind", "offline"}, {"dimension", 256}};
    telemetry::JsonlSinkOptions telemetry;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t threads = 16;
};

ServiceFileConfig parse_service_config(const nlohmann::json& doc, const std::string& base_dir = ".");
ServiceFileConfig load_service_config(const std::string& path);

std::shared_ptr<const kb::EmbeddingProvider> make_embedder(const nlohmann::json& spec);
// Mock scripts: ["text", {"fail": true}, {"reject": true}, ...], "cycle": bool.
std::shared_ptr<provider::ChatBackend> make_chat_backend(const nlohmann::json& spec);
provider::RetryPolicy make_retry_policy(const nlohmann::json& spec);

struct ServicePaths {
    std::string index;
    std::string tasks;
    std::string log_dir;
};

std::shared_ptr<Service> open_service(const ServiceFileConfig& config, const ServicePaths& paths);

}  // namespace tutor::service
