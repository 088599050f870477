#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "elex/embeddings.hpp"
#include "elex/error.hpp"
#include "elex/gmm.hpp"
#include "elex/lexicon.hpp"
#include "elex/parallel.hpp"
#include "elex/pca.hpp"

namespace elex {

// Three-sigma rule: +-3 sd around a cluster's mean similarity maps onto [0, 1].
inline constexpr double kSigmaC = 3.0;

// Posterior mass above which a cluster must have valid statistics.
inline constexpr double kPosteriorFloor = 1e-6;

/// Raw cosine-similarity statistics per cluster, over unordered pairs of distinct
/// lexicon words hard-assigned to the same cluster. Population standard deviation.
struct ClusterStats {
    std::vector<double> mu;
    std::vector<double> sigma;
    std::vector<std::uint64_t> pair_count;
    double sigma_c = kSigmaC;

    std::size_t size() const { return mu.size(); }
    bool valid(std::size_t i) const { return i < size() && pair_count[i] > 0 && sigma[i] > 0.0; }

    bool operator==(const ClusterStats&) const = default;
};

namespace detail {

// Streaming mean / M2 with Chan's pairwise combination.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n + o.n);
        const double delta = o.mean - mean;
        mean += delta * static_cast<double>(o.n) / total;
        m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
        n += o.n;
    }
};

}  // namespace detail

// Hard cluster per covered lexicon word (same order as covered.words).
inline std::vector<std::size_t> assign_clusters(const EmbeddingTable& table, const std::vector<std::size_t>& rows,
                                                const PcaModel& pca, const GmmModel& gmm, unsigned threads = 1) {
    const auto dens = detail::densities(gmm);
    std::vector<std::size_t> out(rows.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        out[i] = hard_assign(detail::posterior_with(gmm, dens, pca.project(table.row(rows[i]))));
    });
    return out;
}

/// Per-cluster mean and population sd of cos(w, w') over same-cluster word pairs.
/// Clusters with fewer than two members (or zero spread) come back invalid.
inline ClusterStats compute_cluster_stats(const EmbeddingTable& table, const Lexicon& lex, const PcaModel& pca,
                                          const GmmModel& gmm, unsigned threads = 1) {
    const CoveredWords covered = covered_lexicon_words(table, lex);
    const auto cluster = assign_clusters(table, covered.rows, pca, gmm, threads);
    const std::size_t k = gmm.size();

    ClusterStats stats;
    stats.mu.assign(k, 0.0);
    stats.sigma.assign(k, 0.0);
    stats.pair_count.assign(k, 0);

    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < cluster.size(); ++i)
            if (cluster[i] == c) members.push_back(covered.rows[i]);
        const std::size_t m = members.size();
        if (m < 2) {
            warn("cluster " + std::to_string(c) + " has " + std::to_string(m) + " member(s); statistics invalid");
            continue;
        }
        std::vector<detail::Moments> rows(m);
        parallel_for(m, threads, [&](std::size_t a) {
            const std::size_t ra = members[a];
            for (std::size_t b = a + 1; b < m; ++b) {
                const std::size_t rb = members[b];
                rows[a].add(cosine_similarity(table.row(ra), table.row(rb), table.norm(ra), table.norm(rb)));
            }
        });
        detail::Moments total;
        for (const auto& r : rows) total.merge(r);
        stats.mu[c] = total.mean;
        stats.sigma[c] = std::sqrt(std::max(0.0, total.m2 / static_cast<double>(total.n)));
        stats.pair_count[c] = total.n;
        if (!(stats.sigma[c] > 0.0)) warn("cluster " + std::to_string(c) + " has zero similarity spread; statistics invalid");
    }
    return stats;
}

/// Z-normalize a raw similarity on cluster i's scale and map +-sigma_c onto [0, 1].
inline double normalize_similarity(double s, std::size_t cluster, const ClusterStats& stats) {
    if (!stats.valid(cluster)) throw NumericError("cluster " + std::to_string(cluster) + " has invalid statistics");
    const double z = (s - stats.mu[cluster]) / stats.sigma[cluster];
    return std::clamp((z + stats.sigma_c) / (2.0 * stats.sigma_c), 0.0, 1.0);
}

/// Posterior-weighted sum of the per-cluster normalized similarities, clipped to [0, 1].
/// Clusters with negligible posterior mass and invalid statistics are left out.
inline double calibrate_raw(double s, const std::vector<double>& p, const ClusterStats& stats) {
    if (p.size() != stats.size()) throw NumericError("posterior size does not match cluster statistics");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!stats.valid(i)) {
            if (p[i] > kPosteriorFloor)
                throw NumericError("cluster " + std::to_string(i) + " carries posterior mass but has invalid statistics");
            continue;
        }
        acc += p[i] * normalize_similarity(s, i, stats);
    }
    return std::clamp(acc, 0.0, 1.0);
}

/// Calibrated similarity between a candidate and a lexicon word, weighted by the
/// candidate's cluster posterior.
inline double calibrated_similarity(Vec candidate, Vec lexicon_word, const PcaModel& pca, const GmmModel& gmm,
                                    const ClusterStats& stats) {
    const double s = cosine_similarity(candidate, lexicon_word);
    return calibrate_raw(s, posterior(gmm, pca.project(candidate)), stats);
}

}  // namespace elex
