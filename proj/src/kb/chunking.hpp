#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tutor::kb {

enum class DocumentKind { Slides, CodeExample, Assignment, ExplanatoryText };

std::string_view document_kind_name(DocumentKind kind);
DocumentKind parse_document_kind(std::string_view name);

struct CourseDocument {
    std::string doc_id;
    std::string title;
    DocumentKind kind = DocumentKind::ExplanatoryText;
    std::string body;  // plain text, markup already stripped
    std::string source_path;
};

struct CourseChunk {
    std::string chunk_id;
    std::string doc_id;
    std::size_t seq = 0;
    std::string text;
    std::vector<double> embedding;  // empty until embedded

    bool operator==(const CourseChunk&) const = default;
};

struct ChunkingPolicy {
    std::size_t chunk_size = 1200;
    std::size_t overlap = 200;

    void validate() const;  // throws InvalidArgument unless 0 <= overlap < chunk_size
};

// Deterministic in (doc_id, seq); zero-padded so lexical order follows seq.
std::string make_chunk_id(const std::string& doc_id, std::size_t seq);

// Greedy character-budget splitter. Each chunk holds a "core" of at most
// chunk_size bytes that partitions the body, prefixed by up to `overlap`
// bytes carried over from the previous core. Cuts prefer the last paragraph
// break (blank line), then the last sentence end, then a hard cut.
std::vector<CourseChunk> chunk_document(const CourseDocument& doc, const ChunkingPolicy& policy);

// Inverse of chunk_document: strips each chunk's carried-over prefix and
// concatenates. Throws InvalidArgument if the chunks are inconsistent.
std::string reconstruct_body(std::span<const CourseChunk> chunks, const ChunkingPolicy& policy);

}  // namespace tutor::kb
