#include "tutor/tutor.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "analytics/merge.hpp"
#include "analytics/stats.hpp"
#include "common/error.hpp"
#include "kb/ingest.hpp"
#include "service/bootstrap.hpp"
#include "service/http_api.hpp"
#include "telemetry/sink.hpp"

struct tutor_service {
    tutor::service::ServiceFileConfig config;
    std::shared_ptr<tutor::service::Service> service;
};

struct tutor_server {
    std::unique_ptr<tutor::service::HttpApi> api;
};

namespace {

thread_local std::string last_error;

tutor_status to_status(tutor::ErrorCode code) {
    using tutor::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return TUTOR_E_INVALID_ARGUMENT;
        case ErrorCode::Io: return TUTOR_E_IO;
        case ErrorCode::EmptyDocument: return TUTOR_E_EMPTY_DOCUMENT;
        case ErrorCode::CorruptIndex: return TUTOR_E_CORRUPT_INDEX;
        case ErrorCode::VersionUnsupported: return TUTOR_E_VERSION_UNSUPPORTED;
        case ErrorCode::DimensionMismatch: return TUTOR_E_DIMENSION_MISMATCH;
        case ErrorCode::UnknownThread: return TUTOR_E_UNKNOWN_THREAD;
        case ErrorCode::UnknownTask: return TUTOR_E_UNKNOWN_TASK;
        case ErrorCode::MissingContext: return TUTOR_E_MISSING_CONTEXT;
        case ErrorCode::ContextTooLarge: return TUTOR_E_CONTEXT_TOO_LARGE;
        case ErrorCode::InvalidConfig: return TUTOR_E_INVALID_CONFIG;
        case ErrorCode::ProviderUnavailable: return TUTOR_E_PROVIDER_UNAVAILABLE;
        case ErrorCode::ProviderRejected: return TUTOR_E_PROVIDER_REJECTED;
        case ErrorCode::ScriptExhausted: return TUTOR_E_SCRIPT_EXHAUSTED;
        case ErrorCode::SinkUnavailable: return TUTOR_E_SINK_UNAVAILABLE;
        case ErrorCode::UnsortedInput: return TUTOR_E_UNSORTED_INPUT;
        case ErrorCode::UnknownCategory: return TUTOR_E_UNKNOWN_CATEGORY;
        case ErrorCode::UnknownMergedId: return TUTOR_E_UNKNOWN_MERGED_ID;
        case ErrorCode::Internal: return TUTOR_E_INTERNAL;
    }
    return TUTOR_E_INTERNAL;
}

template <class Fn>
tutor_status guarded(Fn&& fn) {
    last_error.clear();
    try {
        fn();
        return TUTOR_OK;
    } catch (const tutor::Error& e) {
        last_error = e.what();
        for (const auto& [field, why] : e.fields()) last_error += "; " + field + ": " + why;
        return to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return TUTOR_E_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TUTOR_E_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw tutor::Error(tutor::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

nlohmann::json parse_json_arg(const char* text, const char* what) {
    require(text, what);
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw tutor::Error(tutor::ErrorCode::InvalidArgument, std::string(what) + " is not valid JSON");
    return j;
}

std::string default_tags_path(const std::string& merged_path) {
    std::filesystem::path p(merged_path);
    return (p.parent_path() / (p.stem().string() + ".tags.json")).string();
}

}  // namespace

extern "C" {

const char* tutor_status_name(tutor_status status) {
    switch (status) {
        case TUTOR_OK: return "Ok";
        case TUTOR_E_INVALID_ARGUMENT: return "InvalidArgument";
        case TUTOR_E_IO: return "Io";
        case TUTOR_E_EMPTY_DOCUMENT: return "EmptyDocument";
        case TUTOR_E_CORRUPT_INDEX: return "CorruptIndex";
        case TUTOR_E_VERSION_UNSUPPORTED: return "VersionUnsupported";
        case TUTOR_E_DIMENSION_MISMATCH: return "DimensionMismatch";
        case TUTOR_E_UNKNOWN_THREAD: return "UnknownThread";
        case TUTOR_E_UNKNOWN_TASK: return "UnknownTask";
        case TUTOR_E_MISSING_CONTEXT: return "MissingContext";
        case TUTOR_E_CONTEXT_TOO_LARGE: return "ContextTooLarge";
        case TUTOR_E_INVALID_CONFIG: return "InvalidConfig";
        case TUTOR_E_PROVIDER_UNAVAILABLE: return "ProviderUnavailable";
        case TUTOR_E_PROVIDER_REJECTED: return "ProviderRejected";
        case TUTOR_E_SCRIPT_EXHAUSTED: return "ScriptExhausted";
        case TUTOR_E_SINK_UNAVAILABLE: return "SinkUnavailable";
        case TUTOR_E_UNSORTED_INPUT: return "UnsortedInput";
        case TUTOR_E_UNKNOWN_CATEGORY: return "UnknownCategory";
        case TUTOR_E_UNKNOWN_MERGED_ID: return "UnknownMergedId";
        case TUTOR_E_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* tutor_last_error(void) { return last_error.c_str(); }

void tutor_string_free(char* s) { std::free(s); }

tutor_status tutor_ingest(const char* materials_dir, const char* out_index, size_t chunk_size, size_t overlap,
                          size_t* chunk_count) {
    return guarded([&] {
        require(materials_dir, "materials_dir");
        require(out_index, "out_index");
        tutor::kb::ChunkingPolicy policy{chunk_size, overlap};
        tutor::kb::HashedTfEmbedder embedder;
        auto result = tutor::kb::ingest_documents(tutor::kb::load_materials(materials_dir), policy, embedder);
        tutor::kb::save_index(result.index, out_index);
        if (chunk_count) *chunk_count = result.report.chunks;
    });
}

tutor_status tutor_service_open(const char* config_path, const char* index_path, const char* tasks_path,
                                const char* log_dir, tutor_service** out) {
    return guarded([&] {
        require(config_path, "config_path");
        require(index_path, "index_path");
        require(log_dir, "log_dir");
        require(out, "out");
        auto handle = std::make_unique<tutor_service>();
        handle->config = tutor::service::load_service_config(config_path);
        handle->service = tutor::service::open_service(handle->config,
                                                       {index_path, tasks_path ? tasks_path : "", log_dir});
        *out = handle.release();
    });
}

void tutor_service_close(tutor_service* service) {
    if (service != nullptr) service->service->sink().flush();
    delete service;
}

tutor_status tutor_service_create_session(tutor_service* service, char** thread_id) {
    return guarded([&] {
        require(service, "service");
        require(thread_id, "thread_id");
        *thread_id = dup_string(service->service->create_session());
    });
}

tutor_status tutor_service_post_message(tutor_service* service, const char* thread_id, const char* request_json,
                                        char** response_json) {
    return guarded([&] {
        require(service, "service");
        require(thread_id, "thread_id");
        require(response_json, "response_json");
        const auto request = tutor::service::parse_message_request(parse_json_arg(request_json, "request_json"));
        *response_json = dup_string(tutor::service::to_json(service->service->post_message(thread_id, request)).dump());
    });
}

tutor_status tutor_service_get_config(tutor_service* service, char** config_json) {
    return guarded([&] {
        require(service, "service");
        require(config_json, "config_json");
        *config_json = dup_string(tutor::service::to_json(*service->service->config()).dump());
    });
}

tutor_status tutor_service_put_config(tutor_service* service, const char* patch_json, char** config_json) {
    return guarded([&] {
        require(service, "service");
        auto updated = service->service->put_config(parse_json_arg(patch_json, "patch_json"));
        if (config_json) *config_json = dup_string(tutor::service::to_json(*updated).dump());
    });
}

tutor_status tutor_service_list_tasks(tutor_service* service, char** tasks_json) {
    return guarded([&] {
        require(service, "service");
        require(tasks_json, "tasks_json");
        auto arr = nlohmann::json::array();
        for (const auto& t : service->service->list_tasks()) arr.push_back(tutor::service::to_json(t));
        *tasks_json = dup_string(arr.dump());
    });
}

tutor_status tutor_service_reload_tasks(tutor_service* service) {
    return guarded([&] {
        require(service, "service");
        service->service->reload_tasks();
    });
}

tutor_status tutor_service_flush(tutor_service* service) {
    return guarded([&] {
        require(service, "service");
        service->service->sink().flush();
    });
}

tutor_status tutor_server_start(tutor_service* service, const char* host, int port, tutor_server** out) {
    return guarded([&] {
        require(service, "service");
        require(out, "out");
        auto handle = std::make_unique<tutor_server>();
        handle->api = std::make_unique<tutor::service::HttpApi>(service->service, service->config.threads);
        handle->api->start(host ? host : service->config.host, port < 0 ? service->config.port : port);
        *out = handle.release();
    });
}

int tutor_server_port(const tutor_server* server) { return server ? server->api->port() : -1; }

void tutor_server_stop(tutor_server* server) {
    if (server != nullptr) server->api->stop();
    delete server;
}

tutor_status tutor_analyze_merge(const char* log_dir, double window_seconds, const char* out_path,
                                 size_t* merged_count) {
    return guarded([&] {
        require(log_dir, "log_dir");
        require(out_path, "out_path");
        if (!(window_seconds >= 0)) throw tutor::Error(tutor::ErrorCode::InvalidArgument, "window must be >= 0");
        const auto records = tutor::analytics::interaction_records(tutor::telemetry::read_log_lines(log_dir));
        tutor::analytics::MergedFile file;
        file.window_seconds = window_seconds;
        file.interactions = tutor::analytics::merge_interactions(
            records, std::chrono::microseconds(static_cast<long long>(window_seconds * 1e6)));
        tutor::analytics::save_merged(file, out_path);
        if (merged_count) *merged_count = file.interactions.size();
    });
}

tutor_status tutor_analyze_tag(const char* merged_path, const char* tags_path, const char* merged_id,
                               const char* category) {
    return guarded([&] {
        require(merged_path, "merged_path");
        require(merged_id, "merged_id");
        require(category, "category");
        const std::string tags_file = tags_path ? tags_path : default_tags_path(merged_path);
        const auto merged = tutor::analytics::load_merged(merged_path);
        auto tags = tutor::analytics::load_tags(tags_file);
        tutor::analytics::tag(tags, merged, merged_id, category);
        tutor::analytics::save_tags(tags, tags_file);
    });
}

tutor_status tutor_analyze_stats(const char* merged_path, const char* tags_path, const char* format,
                                 const char* awareness_filter, char** output) {
    return guarded([&] {
        require(merged_path, "merged_path");
        require(output, "output");
        const std::string tags_file = tags_path ? tags_path : default_tags_path(merged_path);
        const auto stats = tutor::analytics::category_stats(
            tutor::analytics::load_merged(merged_path), tutor::analytics::load_tags(tags_file),
            awareness_filter ? std::optional<std::string>(awareness_filter) : std::nullopt);
        *output = dup_string(
            tutor::analytics::render_stats(stats, tutor::analytics::parse_stats_format(format ? format : "table")));
    });
}

}  // extern "C"
