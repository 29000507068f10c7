#pragma once

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "common/clock.hpp"
#include "policy/hints.hpp"
#include "policy/prompt.hpp"

namespace tutor::service {

// Ticket lock: waiters acquire in arrival order.
class FifoMutex {
public:
    void lock();
    void unlock();

private:
    std::mutex mu_;
    std::condition_variable cv_;
    std::uint64_t next_ticket_ = 0;
    std::uint64_t serving_ = 0;
};

struct Message {
    policy::Role role = policy::Role::Student;
    std::string text;
    SysTime timestamp{};
};

struct SessionThread {
    std::string thread_id;
    SysTime created_at{};
    std::vector<Message> history;  // append-only
    policy::HintState hint_state;
    std::optional<std::string> active_task_id;
    SysTime last_record_time{};  // keeps per-thread log timestamps strictly increasing

    FifoMutex turn;  // serialises requests on this thread
};

// 128 random bits from the OS CSPRNG, hex encoded.
std::string random_id();

class SessionStore {
public:
    std::string create();
    std::shared_ptr<SessionThread> find(const std::string& thread_id) const;  // throws UnknownThread
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<SessionThread>> threads_;
};

}  // namespace tutor::service
