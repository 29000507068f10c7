#include "retrieval/retrieval.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace tutor::retrieval {

std::string_view verdict_name(Verdict v) { return v == Verdict::InScope ? "in_scope" : "out_of_scope"; }

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "cannot compare vectors of dimension " +
                                                      std::to_string(a.size()) + " and " + std::to_string(b.size()));
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return std::clamp(dot, -1.0, 1.0);
}

std::vector<ScoredChunk> retrieve(const kb::VectorIndex& index, std::span<const double> query, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (index.empty()) return {};

    std::vector<ScoredChunk> scored;
    scored.reserve(index.size());
    for (const auto& c : index.entries()) scored.push_back({&c, cosine_similarity(c.embedding, query)});

    auto better = [](const ScoredChunk& a, const ScoredChunk& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.chunk->chunk_id < b.chunk->chunk_id;
    };
    const std::size_t n = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), better);
    scored.resize(n);
    return scored;
}

ScopeDecision scope_check(std::span<const ScoredChunk> results, double threshold) {
    ScopeDecision d;
    d.threshold = threshold;
    if (results.empty()) return d;
    d.top_score = results.front().score;
    d.verdict = d.top_score >= threshold ? Verdict::InScope : Verdict::OutOfScope;
    return d;
}

}  // namespace tutor::retrieval
