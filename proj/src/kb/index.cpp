#include "kb/index.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::kb {

using nlohmann::json;

namespace {

bool chunk_less(const CourseChunk& a, const CourseChunk& b) { return a.chunk_id < b.chunk_id; }

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::Internal, "sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

}  // namespace

void VectorIndex::check_chunk(const CourseChunk& c) const {
    if (c.embedding.size() != dimension_)
        throw Error(ErrorCode::DimensionMismatch, "chunk " + c.chunk_id + " has dimension " +
                                                      std::to_string(c.embedding.size()) +
                                                      ", index expects " + std::to_string(dimension_));
    if (std::abs(l2_norm(c.embedding) - 1.0) > 1e-6)
        throw Error(ErrorCode::InvalidArgument, "chunk " + c.chunk_id + " embedding is not unit-norm");
}

void VectorIndex::upsert(std::vector<CourseChunk> chunks) {
    for (const auto& c : chunks) check_chunk(c);
    for (auto& c : chunks) {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), c, chunk_less);
        if (it != entries_.end() && it->chunk_id == c.chunk_id)
            *it = std::move(c);
        else
            entries_.insert(it, std::move(c));
    }
    ++version_;
}

std::size_t VectorIndex::remove_document(const std::string& doc_id) {
    const auto removed = std::erase_if(entries_, [&](const CourseChunk& c) { return c.doc_id == doc_id; });
    if (removed > 0) ++version_;
    return removed;
}

VectorIndex build_index(std::vector<CourseChunk> chunks, const EmbeddingProvider& provider) {
    VectorIndex index(provider.dimension());
    for (auto& c : chunks) {
        if (c.text.empty()) throw Error(ErrorCode::InvalidArgument, "chunk " + c.chunk_id + " has no text");
        if (c.embedding.empty()) {
            c.embedding = embed_text(c.text, provider);
        }
        index.check_chunk(c);
    }
    std::sort(chunks.begin(), chunks.end(), chunk_less);
    for (std::size_t i = 1; i < chunks.size(); ++i)
        if (chunks[i].chunk_id == chunks[i - 1].chunk_id)
            throw Error(ErrorCode::InvalidArgument, "duplicate chunk_id " + chunks[i].chunk_id);
    index.entries_ = std::move(chunks);
    index.version_ = 1;
    return index;
}

std::string serialize_index(const VectorIndex& index) {
    std::string out;
    json header = {{"format", "tutor-index"},
                   {"format_version", kIndexFormatVersion},
                   {"dimension", index.dimension()},
                   {"version", index.version()},
                   {"count", index.size()}};
    out += header.dump();
    out += '\n';
    for (const auto& c : index.entries()) {
        json rec = {{"chunk_id", c.chunk_id},
                    {"doc_id", c.doc_id},
                    {"seq", c.seq},
                    {"text", c.text},
                    {"embedding", c.embedding}};
        out += rec.dump();
        out += '\n';
    }
    json trailer = {{"checksum", "sha256:" + sha256_hex(out)}};
    out += trailer.dump();
    out += '\n';
    return out;
}

VectorIndex parse_index(const std::string& contents) {
    auto corrupt = [](const std::string& why) { return Error(ErrorCode::CorruptIndex, "corrupt index: " + why); };

    // The checksum line is the last complete line; everything before it is covered.
    if (contents.empty() || contents.back() != '\n') throw corrupt("missing trailing newline");
    const auto last_start = contents.rfind('\n', contents.size() - 2);
    if (last_start == std::string::npos) throw corrupt("missing checksum line");
    const std::string covered = contents.substr(0, last_start + 1);

    json trailer = json::parse(contents.substr(last_start + 1), nullptr, false);
    if (trailer.is_discarded() || !trailer.is_object() || !trailer.contains("checksum"))
        throw corrupt("missing checksum line");

    // Read the header before verifying the checksum so that an unknown
    // format version is reported as such.
    std::istringstream lines(covered);
    std::string line;
    std::getline(lines, line);
    json header = json::parse(line, nullptr, false);
    if (header.is_discarded() || !header.is_object() || header.value("format", "") != "tutor-index")
        throw corrupt("bad header");
    if (header.value("format_version", -1) != kIndexFormatVersion)
        throw Error(ErrorCode::VersionUnsupported,
                    "unsupported index format version " + header["format_version"].dump());

    if (trailer["checksum"] != "sha256:" + sha256_hex(covered)) throw corrupt("checksum mismatch");

    try {
        VectorIndex index(header.at("dimension").get<std::size_t>());
        index.version_ = header.at("version").get<std::uint64_t>();
        const auto count = header.at("count").get<std::size_t>();
        while (std::getline(lines, line)) {
            json rec = json::parse(line);
            CourseChunk c;
            c.chunk_id = rec.at("chunk_id").get<std::string>();
            c.doc_id = rec.at("doc_id").get<std::string>();
            c.seq = rec.at("seq").get<std::size_t>();
            c.text = rec.at("text").get<std::string>();
            c.embedding = rec.at("embedding").get<std::vector<double>>();
            index.check_chunk(c);
            index.entries_.push_back(std::move(c));
        }
        if (index.entries_.size() != count) throw corrupt("record count mismatch");
        if (!std::is_sorted(index.entries_.begin(), index.entries_.end(), chunk_less))
            throw corrupt("records out of order");
        return index;
    } catch (const json::exception& e) {
        throw corrupt(e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CorruptIndex) throw;
        throw corrupt(e.what());
    }
}

void save_index(const VectorIndex& index, const std::string& path) {
    text::write_file_atomic(path, serialize_index(index));
}

VectorIndex load_index(const std::string& path) { return parse_index(text::read_file(path)); }

}  // namespace tutor::kb
