#pragma once

#include <memory>
#include <string>
#include <thread>

#include "service/service.hpp"

namespace httplib {
class Server;
}

namespace tutor::service {

// HTTP status for a core error code.
int http_status(ErrorCode code);

// JSON error body: {"error": {"code", "message", "fields"?}}.
nlohmann::json error_body(const Error& e);

// Routes:
//   POST /api/sessions                          -> {"thread_id"}
//   GET  /api/sessions/{thread_id}/messages     -> {"thread_id", "hint_level", "messages": [...]}
//   POST /api/sessions/{thread_id}/messages     -> TutorResponse
//   GET  /api/tasks, GET /api/tasks/{id}
//   GET  /api/config, PUT /api/config
//   GET  /api/health                            -> {"status":"ok","index_version":N}
class HttpApi {
public:
    explicit HttpApi(std::shared_ptr<Service> service, std::size_t worker_threads = 16);
    ~HttpApi();
    HttpApi(const HttpApi&) = delete;
    HttpApi& operator=(const HttpApi&) = delete;

    // Binds (port 0 picks a free port) and serves on a background thread.
    int start(const std::string& host, int port);
    void stop();
    void wait();
    int port() const noexcept { return port_; }

private:
    void install_routes();

    std::shared_ptr<Service> service_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = -1;
};

}  // namespace tutor::service
