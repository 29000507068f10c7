#include "service/sessions.hpp"

#include <openssl/rand.h>

#include "common/error.hpp"

namespace tutor::service {

void FifoMutex::lock() {
    std::unique_lock lock(mu_);
    const auto ticket = next_ticket_++;
    cv_.wait(lock, [&] { return serving_ == ticket; });
}

void FifoMutex::unlock() {
    {
        std::lock_guard lock(mu_);
        ++serving_;
    }
    cv_.notify_all();
}

std::string random_id() {
    unsigned char bytes[16];
    if (RAND_bytes(bytes, sizeof bytes) != 1) throw Error(ErrorCode::Internal, "random source unavailable");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (unsigned char b : bytes) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
    }
    return out;
}

std::string SessionStore::create() {
    auto session = std::make_shared<SessionThread>();
    session->created_at = now_utc();
    std::lock_guard lock(mu_);
    for (;;) {
        session->thread_id = random_id();
        if (threads_.emplace(session->thread_id, session).second) return session->thread_id;
    }
}

std::shared_ptr<SessionThread> SessionStore::find(const std::string& thread_id) const {
    std::lock_guard lock(mu_);
    auto it = threads_.find(thread_id);
    if (it == threads_.end()) throw Error(ErrorCode::UnknownThread, "unknown thread: " + thread_id);
    return it->second;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mu_);
    return threads_.size();
}

}  // namespace tutor::service
