#include "kb/chunking.hpp"

#include <cstdio>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::kb {

namespace {

bool is_sentence_end(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

// Where the overlap prefix of a core starting at core_start begins.
std::size_t overlap_start(std::string_view body, std::size_t core_start, std::size_t overlap) {
    if (overlap == 0 || core_start == 0) return core_start;
    std::size_t start = core_start > overlap ? core_start - overlap : 0;
    // Round up to a character boundary so the prefix never exceeds `overlap`.
    while (start < core_start && (static_cast<unsigned char>(body[start]) & 0xC0) == 0x80) ++start;
    return start;
}

std::size_t choose_cut(std::string_view body, std::size_t pos, std::size_t chunk_size) {
    const std::size_t limit = pos + chunk_size;
    for (std::size_t p = limit; p >= pos + 2; --p) {
        if (body[p - 1] == '\n' && body[p - 2] == '\n') return p;
    }
    for (std::size_t p = limit; p >= pos + 2; --p) {
        if (is_space(body[p - 1]) && is_sentence_end(body[p - 2])) return p;
    }
    std::size_t cut = text::utf8_floor(body, limit);
    return cut > pos ? cut : limit;
}

}  // namespace

std::string_view document_kind_name(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::Slides: return "slides";
        case DocumentKind::CodeExample: return "code_example";
        case DocumentKind::Assignment: return "assignment";
        case DocumentKind::ExplanatoryText: return "explanatory_text";
    }
    return "explanatory_text";
}

DocumentKind parse_document_kind(std::string_view name) {
    if (name == "slides") return DocumentKind::Slides;
    if (name == "code_example") return DocumentKind::CodeExample;
    if (name == "assignment") return DocumentKind::Assignment;
    if (name == "explanatory_text") return DocumentKind::ExplanatoryText;
    throw Error(ErrorCode::InvalidArgument, "unknown document kind: " + std::string(name));
}

void ChunkingPolicy::validate() const {
    if (chunk_size == 0) throw Error(ErrorCode::InvalidArgument, "chunk_size must be positive");
    if (overlap >= chunk_size)
        throw Error(ErrorCode::InvalidArgument, "overlap must be smaller than chunk_size");
}

std::string make_chunk_id(const std::string& doc_id, std::size_t seq) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06zu", seq);
    return doc_id + "#" + buf;
}

std::vector<CourseChunk> chunk_document(const CourseDocument& doc, const ChunkingPolicy& policy) {
    policy.validate();
    if (text::is_blank(doc.body))
        throw Error(ErrorCode::EmptyDocument, "document '" + doc.doc_id + "' has an empty body");

    const std::string_view body = doc.body;
    std::vector<CourseChunk> chunks;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const std::size_t end = body.size() - pos <= policy.chunk_size
                                    ? body.size()
                                    : choose_cut(body, pos, policy.chunk_size);
        const std::size_t from = overlap_start(body, pos, policy.overlap);
        CourseChunk c;
        c.doc_id = doc.doc_id;
        c.seq = chunks.size();
        c.chunk_id = make_chunk_id(doc.doc_id, c.seq);
        c.text = std::string(body.substr(from, end - from));
        chunks.push_back(std::move(c));
        pos = end;
    }
    return chunks;
}

std::string reconstruct_body(std::span<const CourseChunk> chunks, const ChunkingPolicy& policy) {
    std::string body;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        const auto& c = chunks[i];
        if (c.seq != i) throw Error(ErrorCode::InvalidArgument, "chunk seq values are not contiguous");
        const std::size_t from = overlap_start(body, body.size(), policy.overlap);
        const std::string_view carried = std::string_view(body).substr(from);
        if (std::string_view(c.text).substr(0, carried.size()) != carried)
            throw Error(ErrorCode::InvalidArgument, "chunk " + c.chunk_id + " does not overlap its predecessor");
        body.append(c.text, carried.size());
    }
    return body;
}

}  // namespace tutor::kb
