#include "kb/ingest.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::kb {

namespace fs = std::filesystem;

DocumentKind infer_kind(const fs::path& relative_path) {
    const std::string lowered = text::to_lower_ascii(relative_path.generic_string());
    if (lowered.find("slide") != std::string::npos) return DocumentKind::Slides;
    if (lowered.find("assignment") != std::string::npos || lowered.find("exercise") != std::string::npos ||
        lowered.find("task") != std::string::npos)
        return DocumentKind::Assignment;
    if (relative_path.extension() == ".py") return DocumentKind::CodeExample;
    return DocumentKind::ExplanatoryText;
}

namespace {

std::string first_line_title(const std::string& body, const fs::path& fallback) {
    for (const auto& line : text::split_lines(body)) {
        auto start = line.find_first_not_of(" \t#");
        if (start == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t");
        return line.substr(start, end - start + 1);
    }
    return fallback.stem().string();
}

}  // namespace

std::vector<CourseDocument> load_materials(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "materials directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".txt" || ext == ".md" || ext == ".py" || ext == ".rst") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<CourseDocument> docs;
    docs.reserve(files.size());
    for (const auto& file : files) {
        const fs::path rel = fs::relative(file, dir);
        CourseDocument doc;
        doc.doc_id = rel.generic_string();
        doc.kind = infer_kind(rel);
        doc.body = text::read_file(file.string());
        doc.title = first_line_title(doc.body, rel);
        doc.source_path = file.string();
        docs.push_back(std::move(doc));
    }
    return docs;
}

IngestResult ingest_documents(const std::vector<CourseDocument>& docs, const ChunkingPolicy& policy,
                              const EmbeddingProvider& provider) {
    policy.validate();
    IngestReport report;
    std::vector<CourseChunk> chunks;
    for (const auto& doc : docs) {
        if (text::is_blank(doc.body)) {
            report.skipped.push_back(doc.doc_id);
            continue;
        }
        auto doc_chunks = chunk_document(doc, policy);
        ++report.documents;
        report.chunks += doc_chunks.size();
        std::move(doc_chunks.begin(), doc_chunks.end(), std::back_inserter(chunks));
    }
    return {build_index(std::move(chunks), provider), std::move(report)};
}

}  // namespace tutor::kb
