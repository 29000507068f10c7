#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <mutex>
#include <nlohmann/json.hpp>
#include <string>
#include <thread>
#include <vector>

#include "telemetry/record.hpp"

namespace tutor::telemetry {

class Sink {
public:
    virtual ~Sink() = default;
    // Never throws into the request path; failures bump dropped().
    virtual void record(const nlohmann::json& line) = 0;
    void record(const InteractionRecord& rec) { record(to_json(rec)); }
    virtual void flush() = 0;
    virtual std::uint64_t dropped() const = 0;
};

enum class FsyncPolicy { Never, EveryRecord };

struct JsonlSinkOptions {
    std::size_t queue_capacity = 4096;
    FsyncPolicy fsync = FsyncPolicy::Never;
};

// Daily-rotated `interactions-YYYY-MM-DD.jsonl` files (date taken from each
// line's "timestamp"). One background appender drains a bounded queue; when
// the queue is full the line is dropped and counted instead of blocking.
class JsonlSink final : public Sink {
public:
    explicit JsonlSink(std::filesystem::path dir, JsonlSinkOptions options = {});
    ~JsonlSink() override;
    JsonlSink(const JsonlSink&) = delete;
    JsonlSink& operator=(const JsonlSink&) = delete;

    using Sink::record;
    void record(const nlohmann::json& line) override;
    void flush() override;
    std::uint64_t dropped() const override { return dropped_.load(); }

    const std::filesystem::path& directory() const noexcept { return dir_; }

private:
    void run();
    void append(const std::string& date, const std::string& bytes);
    void close_file();

    std::filesystem::path dir_;
    JsonlSinkOptions options_;
    std::atomic<std::uint64_t> dropped_{0};

    std::mutex mu_;
    std::condition_variable wake_;
    std::condition_variable idle_;
    std::deque<std::pair<std::string, std::string>> queue_;  // (date, line)
    bool busy_ = false;
    bool stopping_ = false;

    int fd_ = -1;
    std::string open_date_;
    std::thread worker_;
};

// Collects lines in memory (tests, embedding without a log directory).
class MemorySink final : public Sink {
public:
    using Sink::record;
    void record(const nlohmann::json& line) override;
    void flush() override {}
    std::uint64_t dropped() const override { return 0; }
    std::vector<nlohmann::json> lines() const;

private:
    mutable std::mutex mu_;
    std::vector<nlohmann::json> lines_;
};

std::string log_file_name(const std::string& date);  // interactions-YYYY-MM-DD.jsonl

// Every line of every interactions-*.jsonl file under dir, files in name order.
std::vector<nlohmann::json> read_log_lines(const std::filesystem::path& dir);

}  // namespace tutor::telemetry
