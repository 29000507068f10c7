#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kb/index.hpp"

namespace tutor::retrieval {

struct ScoredChunk {
    const kb::CourseChunk* chunk = nullptr;  // borrowed from the index
    double score = 0.0;
};

enum class Verdict { InScope, OutOfScope };

std::string_view verdict_name(Verdict v);

struct ScopeDecision {
    Verdict verdict = Verdict::OutOfScope;
    double top_score = 0.0;
    double threshold = 0.0;
};

// Dot product of two unit vectors. Throws DimensionMismatch.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Exact top-k by full scan. Ordered by descending score, ties by ascending
// chunk_id. Result pointers stay valid while the index is not mutated.
std::vector<ScoredChunk> retrieve(const kb::VectorIndex& index, std::span<const double> query, std::size_t k);

// Looks only at scores: in scope iff there is a result and the best one
// reaches the threshold.
ScopeDecision scope_check(std::span<const ScoredChunk> results, double threshold);

}  // namespace tutor::retrieval
