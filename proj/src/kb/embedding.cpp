#include "kb/embedding.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "common/error.hpp"
#include "common/text.hpp"

namespace tutor::kb {

namespace {

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

// Sorted for binary search. Deliberately excludes Python keywords.
constexpr std::array<std::string_view, 103> kStopwords = {
    "a",      "about",  "after",  "again", "all",    "am",    "an",     "any",   "are",   "at",
    "be",     "been",   "before", "being", "both",   "but",   "by",     "can",   "could", "did",
    "do",     "does",   "doing",  "down",  "during", "each",  "few",    "further", "had", "has",
    "have",   "having", "he",     "her",   "here",   "hers",  "him",    "his",   "how",   "i",
    "into",   "it",     "its",    "just",  "like",   "me",    "might",  "more",  "most",  "must",
    "my",     "near",   "of",     "off",   "on",     "once",  "only",   "other", "our",   "out",
    "over",   "own",    "please", "same",  "shall",  "she",   "should", "so",    "some",  "such",
    "than",   "that",   "the",    "their", "them",   "then",  "there",  "these", "they",  "this",
    "those",  "through", "to",    "too",   "under",  "until", "up",     "very",  "was",   "we",
    "were",   "what",   "when",   "where", "which",  "who",   "whom",   "why",   "will",  "would",
    "you",    "your",   "yours",
};

bool is_stopword(std::string_view t) { return std::binary_search(kStopwords.begin(), kStopwords.end(), t); }

}  // namespace

std::vector<std::string> word_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_word_byte(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::vector<std::string> index_terms(std::string_view text) {
    std::vector<std::string> terms;
    for (auto& t : word_tokens(text)) {
        if (is_stopword(t)) continue;
        if (t.size() > 3 && t.back() == 's' && t[t.size() - 2] != 's') t.pop_back();
        terms.push_back(std::move(t));
    }
    return terms;
}

HashedTfEmbedder::HashedTfEmbedder(std::size_t dimension) : dimension_(dimension) {
    if (dimension_ == 0) throw Error(ErrorCode::InvalidArgument, "embedding dimension must be positive");
}

std::string HashedTfEmbedder::id() const { return "hashed-tf-" + std::to_string(dimension_); }

Embedding HashedTfEmbedder::embed(std::string_view text) const {
    auto tokens = index_terms(text);
    if (tokens.empty()) tokens = word_tokens(text);
    if (tokens.empty()) {
        // Punctuation-only input: fall back to single non-space characters.
        for (unsigned char c : text)
            if (!std::isspace(c)) tokens.emplace_back(1, static_cast<char>(c));
    }
    if (tokens.empty()) throw Error(ErrorCode::InvalidArgument, "cannot embed blank text");

    Embedding v(dimension_, 0.0);
    for (const auto& t : tokens) v[bucket(t)] += 1.0;
    const double norm = l2_norm(v);
    for (auto& x : v) x /= norm;
    return v;
}

double l2_norm(const Embedding& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

Embedding embed_text(std::string_view text, const EmbeddingProvider& provider) {
    if (text.empty()) throw Error(ErrorCode::InvalidArgument, "cannot embed empty text");
    Embedding v = provider.embed(text);
    if (v.size() != provider.dimension())
        throw Error(ErrorCode::DimensionMismatch,
                    "provider returned dimension " + std::to_string(v.size()) + ", expected " +
                        std::to_string(provider.dimension()));
    const double norm = l2_norm(v);
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidArgument, "provider returned a zero vector");
    if (std::abs(norm - 1.0) > 1e-9) {
        for (auto& x : v) x /= norm;
    }
    return v;
}

}  // namespace tutor::kb
