#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kb/chunking.hpp"
#include "kb/embedding.hpp"
#include "kb/index.hpp"

namespace tutor::kb {

// Kind from path hints: "slide" -> slides, "assignment"/"exercise"/"task" ->
// assignment, .py -> code_example, anything else -> explanatory_text.
DocumentKind infer_kind(const std::filesystem::path& relative_path);

// Reads every .txt/.md/.py/.rst file below `dir` in sorted path order.
// doc_id is the '/'-separated path relative to `dir`.
std::vector<CourseDocument> load_materials(const std::filesystem::path& dir);

struct IngestReport {
    std::size_t documents = 0;
    std::size_t chunks = 0;
    std::vector<std::string> skipped;  // doc_ids with blank bodies
};

struct IngestResult {
    VectorIndex index;
    IngestReport report;
};

IngestResult ingest_documents(const std::vector<CourseDocument>& docs, const ChunkingPolicy& policy,
                              const EmbeddingProvider& provider);

}  // namespace tutor::kb
