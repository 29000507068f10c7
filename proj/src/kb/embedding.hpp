#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tutor::kb {

using Embedding = std::vector<double>;

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dimension() const = 0;
    virtual std::string id() const = 0;
    // Raw provider output; callers go through embed_text for validation.
    virtual Embedding embed(std::string_view text) const = 0;
};

// Lowercased word tokens: maximal runs of ASCII alphanumerics, '_' and
// non-ASCII bytes.
std::vector<std::string> word_tokens(std::string_view text);

// FNV-1a 64; stable across processes and platforms.
std::uint64_t fnv1a64(std::string_view s);

// Content terms of word_tokens(): English function words are dropped
// (Python keywords such as "for", "in", "is" are kept) and a trailing plural
// "s" is folded on tokens longer than three characters.
std::vector<std::string> index_terms(std::string_view text);

// Hashed term-frequency vectors over index_terms(), L2-normalised. Fully
// offline and deterministic across processes.
class HashedTfEmbedder final : public EmbeddingProvider {
public:
    explicit HashedTfEmbedder(std::size_t dimension = 256);

    std::size_t dimension() const override { return dimension_; }
    std::string id() const override;
    Embedding embed(std::string_view text) const override;

    std::size_t bucket(std::string_view token) const { return fnv1a64(token) % dimension_; }

private:
    std::size_t dimension_;
};

double l2_norm(const Embedding& v);

// Embeds `text` and checks the provider contract (dimension, unit norm).
Embedding embed_text(std::string_view text, const EmbeddingProvider& provider);

}  // namespace tutor::kb
