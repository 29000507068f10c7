#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "kb/chunking.hpp"
#include "kb/embedding.hpp"

namespace tutor::kb {

inline constexpr int kIndexFormatVersion = 1;

// Exact (brute-force) vector store. Entries are kept sorted by chunk_id so
// serialisation is canonical.
class VectorIndex {
public:
    VectorIndex() = default;
    explicit VectorIndex(std::size_t dimension) : dimension_(dimension) {}

    std::size_t dimension() const noexcept { return dimension_; }
    std::uint64_t version() const noexcept { return version_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<CourseChunk>& entries() const noexcept { return entries_; }

    // Inserts or replaces chunks by chunk_id; bumps version once.
    void upsert(std::vector<CourseChunk> chunks);
    // Drops every chunk of doc_id; bumps version if anything was removed.
    std::size_t remove_document(const std::string& doc_id);

    bool operator==(const VectorIndex&) const = default;

private:
    friend VectorIndex build_index(std::vector<CourseChunk>, const EmbeddingProvider&);
    friend VectorIndex parse_index(const std::string&);
    void check_chunk(const CourseChunk& c) const;

    std::size_t dimension_ = 0;
    std::vector<CourseChunk> entries_;
    std::uint64_t version_ = 0;
};

// Embeds chunks lacking an embedding; result has version 1.
VectorIndex build_index(std::vector<CourseChunk> chunks, const EmbeddingProvider& provider);

std::string serialize_index(const VectorIndex& index);
VectorIndex parse_index(const std::string& contents);
void save_index(const VectorIndex& index, const std::string& path);
VectorIndex load_index(const std::string& path);

// Read-mostly shared holder used by request handlers.
class SharedIndex {
public:
    explicit SharedIndex(VectorIndex index) : index_(std::move(index)) {}

    template <class Fn>
    decltype(auto) read(Fn&& fn) const {
        std::shared_lock lock(mu_);
        return fn(static_cast<const VectorIndex&>(index_));
    }
    template <class Fn>
    decltype(auto) write(Fn&& fn) {
        std::unique_lock lock(mu_);
        return fn(index_);
    }
    std::uint64_t version() const {
        std::shared_lock lock(mu_);
        return index_.version();
    }

private:
    mutable std::shared_mutex mu_;
    VectorIndex index_;
};

}  // namespace tutor::kb
