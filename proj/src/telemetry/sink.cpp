#include "telemetry/sink.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <fstream>

#include "common/error.hpp"

namespace tutor::telemetry {

namespace fs = std::filesystem;

std::string log_file_name(const std::string& date) { return "interactions-" + date + ".jsonl"; }

JsonlSink::JsonlSink(fs::path dir, JsonlSinkOptions options) : dir_(std::move(dir)), options_(options) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw Error(ErrorCode::SinkUnavailable, "cannot create log directory " + dir_.string());
    worker_ = std::thread([this] { run(); });
}

JsonlSink::~JsonlSink() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    wake_.notify_all();
    worker_.join();
    close_file();
}

void JsonlSink::record(const nlohmann::json& line) {
    std::string date;
    try {
        date = line.at("timestamp").get<std::string>().substr(0, 10);
    } catch (const std::exception&) {
        date = format_date(now_utc());
    }
    std::string bytes = line.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    bytes += '\n';
    {
        std::lock_guard lock(mu_);
        if (queue_.size() >= options_.queue_capacity || stopping_) {
            ++dropped_;
            return;
        }
        queue_.emplace_back(std::move(date), std::move(bytes));
    }
    wake_.notify_one();
}

void JsonlSink::flush() {
    std::unique_lock lock(mu_);
    idle_.wait(lock, [this] { return queue_.empty() && !busy_; });
}

void JsonlSink::run() {
    std::unique_lock lock(mu_);
    for (;;) {
        wake_.wait(lock, [this] { return stopping_ || !queue_.empty(); });
        if (queue_.empty() && stopping_) break;
        auto item = std::move(queue_.front());
        queue_.pop_front();
        busy_ = true;
        lock.unlock();
        try {
            append(item.first, item.second);
        } catch (const std::exception&) {
            ++dropped_;
        }
        lock.lock();
        busy_ = false;
        if (queue_.empty()) idle_.notify_all();
    }
    idle_.notify_all();
}

void JsonlSink::close_file() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
    open_date_.clear();
}

void JsonlSink::append(const std::string& date, const std::string& bytes) {
    if (fd_ < 0 || date != open_date_) {
        close_file();
        const auto path = dir_ / log_file_name(date);
        fd_ = ::open(path.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0) throw Error(ErrorCode::SinkUnavailable, "cannot open " + path.string());
        open_date_ = date;
    }
    std::size_t written = 0;
    while (written < bytes.size()) {
        const auto n = ::write(fd_, bytes.data() + written, bytes.size() - written);
        if (n < 0) {
            if (errno == EINTR) continue;
            close_file();
            throw Error(ErrorCode::SinkUnavailable, "write to log failed");
        }
        written += static_cast<std::size_t>(n);
    }
    if (options_.fsync == FsyncPolicy::EveryRecord) ::fsync(fd_);
}

void MemorySink::record(const nlohmann::json& line) {
    std::lock_guard lock(mu_);
    lines_.push_back(line);
}

std::vector<nlohmann::json> MemorySink::lines() const {
    std::lock_guard lock(mu_);
    return lines_;
}

std::vector<nlohmann::json> read_log_lines(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "log directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        const auto name = e.path().filename().string();
        if (e.is_regular_file() && name.rfind("interactions-", 0) == 0 && e.path().extension() == ".jsonl")
            files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<nlohmann::json> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded())
                throw Error(ErrorCode::Io, f.filename().string() + ":" + std::to_string(lineno) + " is not valid JSON");
            out.push_back(std::move(j));
        }
    }
    return out;
}

}  // namespace tutor::telemetry
