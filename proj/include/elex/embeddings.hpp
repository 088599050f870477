#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "elex/error.hpp"
#include "elex/json_io.hpp"
#include "elex/lexicon.hpp"
#include "elex/parallel.hpp"
#include "elex/text.hpp"

namespace elex {

inline constexpr std::size_t kDefaultEmbeddingDim = 768;

using Vec = std::span<const double>;

inline double l2_norm(Vec v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

/// Cosine similarity with precomputed norms. The two-argument overload forwards here,
/// so both give identical bits. Clamped to [-1, 1].
inline double cosine_similarity(Vec u, Vec v, double norm_u, double norm_v) {
    if (u.size() != v.size())
        throw NumericError("cosine_similarity: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                           std::to_string(v.size()) + ")");
    if (!(norm_u > 0.0) || !(norm_v > 0.0)) throw NumericError("cosine_similarity: zero-norm vector");
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    return std::clamp(dot / (norm_u * norm_v), -1.0, 1.0);
}

inline double cosine_similarity(Vec u, Vec v) { return cosine_similarity(u, v, l2_norm(u), l2_norm(v)); }

// Immutable word -> vector store. Rows keep insertion order; lookups go through a hash index.
class EmbeddingTable {
public:
    explicit EmbeddingTable(std::size_t dim = kDefaultEmbeddingDim) : dim_(dim) {
        if (dim == 0) throw std::invalid_argument("embedding dim must be positive");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return words_.size(); }

    const std::string& word(std::size_t row) const { return words_.at(row); }
    Vec row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    double norm(std::size_t i) const { return norms_[i]; }

    std::optional<std::size_t> index_of(std::string_view word) const {
        auto it = index_.find(std::string(word));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(std::string_view word) const { return index_of(word).has_value(); }

    std::optional<Vec> find(std::string_view word) const {
        if (auto i = index_of(word)) return row(*i);
        return std::nullopt;
    }

    // Adds or replaces (last wins) a vector. Rejects wrong length, non-finite and zero-norm vectors.
    // Returns true when an existing word was replaced.
    bool add(const std::string& word, std::span<const double> values) {
        if (values.size() != dim_)
            throw NumericError("vector for '" + word + "' has " + std::to_string(values.size()) +
                               " components, expected " + std::to_string(dim_));
        for (double x : values)
            if (!std::isfinite(x)) throw NumericError("non-finite component in vector for '" + word + "'");
        const double n = l2_norm(values);
        if (!(n > 0.0)) throw NumericError("zero-norm vector for '" + word + "'");

        if (auto it = index_.find(word); it != index_.end()) {
            std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
            norms_[it->second] = n;
            return true;
        }
        index_.emplace(word, words_.size());
        words_.push_back(word);
        data_.insert(data_.end(), values.begin(), values.end());
        norms_.push_back(n);
        return false;
    }

private:
    std::size_t dim_;
    std::vector<std::string> words_;
    std::vector<double> data_;
    std::vector<double> norms_;
    std::unordered_map<std::string, std::size_t> index_;
};

namespace detail {

inline std::vector<std::string_view> split_spaces(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace detail

/// Load a word2vec-style text file: `<count> <dim>` header, then `<word> <v1> ... <vdim>`
/// rows. `#` lines before the header are comments. Words are lowercased + NFC-normalized;
/// duplicates keep the last row (with a warning).
inline EmbeddingTable load_embeddings(std::istream& in) {
    std::optional<EmbeddingTable> table;
    std::size_t expected = 0;
    std::size_t rows = 0;
    std::size_t last_line = 0;
    std::vector<double> values;

    for_each_line(in, [&](std::size_t n, const std::string& line) {
        last_line = n;
        if (!table) {
            if (!line.empty() && line.front() == '#') return;
            const auto fields = detail::split_spaces(line);
            std::optional<std::size_t> count, dim;
            if (fields.size() == 2) {
                count = detail::parse_number<std::size_t>(fields[0]);
                dim = detail::parse_number<std::size_t>(fields[1]);
            }
            if (!count || !dim || *dim == 0) throw FormatError("expected header '<count> <dim>'", n);
            expected = *count;
            table.emplace(*dim);
            return;
        }
        if (line.empty()) return;
        const auto fields = detail::split_spaces(line);
        if (fields.empty()) return;
        if (fields.size() - 1 != table->dim())
            throw FormatError("expected " + std::to_string(table->dim()) + " values, got " +
                                  std::to_string(fields.size() - 1),
                              n);
        values.resize(table->dim());
        for (std::size_t i = 0; i < table->dim(); ++i) {
            auto v = detail::parse_number<double>(fields[i + 1]);
            if (!v) throw FormatError("bad number '" + std::string(fields[i + 1]) + "'", n);
            values[i] = *v;
        }
        const std::string word = normalize_word(fields[0]);
        try {
            if (table->add(word, values)) warn("duplicate embedding for '" + word + "', keeping the last one");
        } catch (const NumericError& e) {
            throw FormatError(e.what(), n);
        }
        ++rows;
    });

    if (!table) throw FormatError("missing header '<count> <dim>'", last_line);
    if (rows != expected)
        throw FormatError("header declares " + std::to_string(expected) + " rows, found " + std::to_string(rows),
                          last_line);
    return std::move(*table);
}

inline EmbeddingTable load_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open embeddings: " + path);
    return load_embeddings(in);
}

// Words requested from a table that it does not contain.
struct CoverageReport {
    std::vector<std::string> missing;  // sorted
    std::size_t requested = 0;

    double coverage_ratio() const {
        return requested == 0 ? 1.0 : static_cast<double>(requested - missing.size()) / static_cast<double>(requested);
    }

    Json to_json() const {
        Json j;
        j["missing"] = missing;
        j["coverage_ratio"] = coverage_ratio();
        return j;
    }
};

// Lexicon words that have embeddings (sorted), plus the coverage report for the rest.
struct CoveredWords {
    std::vector<std::string> words;
    std::vector<std::size_t> rows;  // table row per word
    CoverageReport coverage;
};

inline CoveredWords covered_lexicon_words(const EmbeddingTable& table, const Lexicon& lex) {
    CoveredWords out;
    for (const auto& [word, _] : lex) {
        ++out.coverage.requested;
        if (auto row = table.index_of(word)) {
            out.words.push_back(word);
            out.rows.push_back(*row);
        } else {
            out.coverage.missing.push_back(word);
        }
    }
    return out;
}

/// Per-category histogram of cos(w, w') over lexicon words w carrying the category and
/// all lexicon words w'. Bins are uniform over [-1, 1]; 1.0 falls in the last bin.
struct SimilarityHistogram {
    std::size_t bins = 0;
    std::vector<std::vector<std::uint64_t>> counts;  // [category][bin]
    CoverageReport coverage;

    double bin_lower(std::size_t b) const { return -1.0 + 2.0 * static_cast<double>(b) / static_cast<double>(bins); }
    double bin_upper(std::size_t b) const { return bin_lower(b + 1); }

    std::uint64_t total(std::size_t category) const {
        std::uint64_t t = 0;
        for (auto c : counts[category]) t += c;
        return t;
    }
};

inline std::size_t histogram_bin(double s, std::size_t bins) {
    const double pos = (s + 1.0) / 2.0 * static_cast<double>(bins);
    const auto b = static_cast<std::ptrdiff_t>(std::floor(pos));
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1));
}

inline SimilarityHistogram similarity_histogram(const EmbeddingTable& table, const Lexicon& lex, std::size_t bins,
                                                bool include_self, unsigned threads = 1) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    const CoveredWords covered = covered_lexicon_words(table, lex);
    const std::size_t ncat = lex.schema().size();
    const std::size_t n = covered.words.size();

    std::vector<EmotionVector> flags(n);
    for (std::size_t i = 0; i < n; ++i) flags[i] = lex.find(covered.words[i])->emotions;

    // Integer counts: block partial sums are order independent.
    const std::size_t blocks = std::min<std::size_t>(n, 64);
    std::vector<std::vector<std::uint64_t>> partial(blocks, std::vector<std::uint64_t>(ncat * bins, 0));
    parallel_for(blocks, threads, [&](std::size_t blk) {
        auto& local = partial[blk];
        for (std::size_t i = n * blk / blocks; i < n * (blk + 1) / blocks; ++i) {
            if (flags[i].none()) continue;
            const std::size_t ri = covered.rows[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i && !include_self) continue;
                const std::size_t rj = covered.rows[j];
                const double s = cosine_similarity(table.row(ri), table.row(rj), table.norm(ri), table.norm(rj));
                const std::size_t b = histogram_bin(s, bins);
                for (std::size_t e = 0; e < ncat; ++e)
                    if (flags[i].test(e)) ++local[e * bins + b];
            }
        }
    });

    SimilarityHistogram h;
    h.bins = bins;
    h.coverage = covered.coverage;
    h.counts.assign(ncat, std::vector<std::uint64_t>(bins, 0));
    for (const auto& local : partial)
        for (std::size_t e = 0; e < ncat; ++e)
            for (std::size_t b = 0; b < bins; ++b) h.counts[e][b] += local[e * bins + b];
    return h;
}

inline std::string histogram_csv(const SimilarityHistogram& h, const CategorySchema& schema) {
    std::string out = "emotion,bin,bin_lower,bin_upper,count\n";
    for (std::size_t e = 0; e < h.counts.size(); ++e)
        for (std::size_t b = 0; b < h.bins; ++b)
            out += schema.name(e) + "," + std::to_string(b) + "," + format_real(h.bin_lower(b)) + "," +
                   format_real(h.bin_upper(b)) + "," + std::to_string(h.counts[e][b]) + "\n";
    return out;
}

}  // namespace elex
