#include "service/http_api.hpp"

#include <httplib.h>

#include "common/error.hpp"

namespace tutor::service {

using nlohmann::json;

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownThread:
        case ErrorCode::UnknownTask: return 404;
        case ErrorCode::InvalidArgument:
        case ErrorCode::MissingContext:
        case ErrorCode::InvalidConfig: return 400;
        case ErrorCode::ContextTooLarge: return 413;
        case ErrorCode::ProviderUnavailable: return 503;
        case ErrorCode::ProviderRejected:
        case ErrorCode::ScriptExhausted: return 502;
        default: return 500;
    }
}

json error_body(const Error& e) {
    json err = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (!e.fields().empty()) err["fields"] = e.fields();
    return {{"error", err}};
}

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

json parse_body(const httplib::Request& req) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded()) throw Error(ErrorCode::InvalidArgument, "request body is not valid JSON");
    return body;
}

json history_json(const std::string& thread_id, const std::vector<Message>& history, int hint_level) {
    json messages = json::array();
    for (const auto& m : history)
        messages.push_back({{"role", policy::role_name(m.role)},
                            {"text", m.text},
                            {"timestamp", format_rfc3339(m.timestamp)}});
    return {{"thread_id", thread_id}, {"hint_level", hint_level}, {"messages", messages}};
}

}  // namespace

HttpApi::HttpApi(std::shared_ptr<Service> service, std::size_t worker_threads)
    : service_(std::move(service)), server_(std::make_unique<httplib::Server>()) {
    server_->new_task_queue = [worker_threads] { return new httplib::ThreadPool(worker_threads); };
    install_routes();
}

HttpApi::~HttpApi() { stop(); }

void HttpApi::install_routes() {
    auto& s = *server_;
    s.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (const Error& e) {
            if (auto ms = e.retry_after_ms()) res.set_header("Retry-After", std::to_string((*ms + 999) / 1000));
            reply(res, http_status(e.code()), error_body(e));
        } catch (const std::exception& e) {
            reply(res, 500, error_body(Error(ErrorCode::Internal, e.what())));
        }
    });

    s.Post("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
        reply(res, 201, {{"thread_id", service_->create_session()}});
    });
    s.Get(R"(/api/sessions/([^/]+)/messages)", [this](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        reply(res, 200, history_json(id, service_->history(id), service_->hint_state(id).level));
    });
    s.Post(R"(/api/sessions/([^/]+)/messages)", [this](const httplib::Request& req, httplib::Response& res) {
        const auto request = parse_message_request(parse_body(req));
        reply(res, 200, to_json(service_->post_message(req.matches[1], request)));
    });
    s.Get("/api/tasks", [this](const httplib::Request&, httplib::Response& res) {
        json tasks = json::array();
        for (const auto& t : service_->list_tasks()) tasks.push_back(to_json(t));
        reply(res, 200, tasks);
    });
    s.Get(R"(/api/tasks/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, 200, to_json(service_->get_task(req.matches[1])));
    });
    s.Get("/api/config", [this](const httplib::Request&, httplib::Response& res) {
        reply(res, 200, to_json(*service_->config()));
    });
    s.Put("/api/config", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, 200, to_json(*service_->put_config(parse_body(req))));
    });
    s.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
        reply(res, 200, {{"status", "ok"}, {"index_version", service_->index_version()}});
    });
}

int HttpApi::start(const std::string& host, int port) {
    if (thread_.joinable()) throw Error(ErrorCode::InvalidArgument, "server already started");
    port_ = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (port_ < 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port_;
}

void HttpApi::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

void HttpApi::wait() {
    if (thread_.joinable()) thread_.join();
}

}  // namespace tutor::service
