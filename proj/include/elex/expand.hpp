#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "elex/calibrate.hpp"
#include "elex/cluster_model.hpp"
#include "elex/embeddings.hpp"
#include "elex/json_io.hpp"
#include "elex/lexicon.hpp"
#include "elex/parallel.hpp"

namespace elex {

inline constexpr double kDefaultTheta = 0.4;

struct Assignment {
    std::string word;
    std::size_t emotion = 0;
    std::string nearest;
    double similarity = 0.0;

    auto operator<=>(const Assignment&) const = default;
};

struct EmotionDiagnostics {
    std::size_t count = 0;
    double binary_entropy = 0.0;  // bits, of the share of expanded words carrying the emotion

    bool operator==(const EmotionDiagnostics&) const = default;
};

struct ThresholdDiagnostics {
    double theta = 0.0;
    std::size_t total_new_assignments = 0;
    std::size_t unique_words_expanded = 0;
    std::size_t unique_patterns = 0;
    double avg_hamming = 0.0;       // raw differing bits, mean over unordered word pairs
    double avg_hamming_norm = 0.0;  // avg_hamming / number of categories
    double overall_entropy = 0.0;   // bits, of the assignment distribution over categories
    std::vector<EmotionDiagnostics> per_emotion;

    bool operator==(const ThresholdDiagnostics&) const = default;
};

struct ExpansionResult {
    double theta = 0.0;
    std::vector<Assignment> assignments;  // sorted by (word, emotion)
    Lexicon expanded_lexicon;             // expanded entries only
    ThresholdDiagnostics diagnostics;
    CoverageReport candidate_coverage;
    std::vector<std::string> skipped_in_seed;
    std::vector<std::size_t> unexpandable;  // categories no seed word carries
};

/// For every candidate and category: the seed word with the highest calibrated
/// similarity (ties to the lexicographically smaller word) and that similarity.
/// Independent of theta, so one table serves a whole sweep.
struct NearestTable {
    CategorySchema schema;
    std::vector<std::string> candidates;                  // sorted, embedded, not in seed
    std::vector<std::vector<std::optional<Support>>> best;  // [candidate][category]
    CoverageReport candidate_coverage;
    std::vector<std::string> skipped_in_seed;
    std::vector<std::size_t> unexpandable;
};

inline NearestTable nearest_by_emotion(const std::vector<std::string>& candidate_list, const Lexicon& seed,
                                       const EmbeddingTable& table, const ClusterModel& model, unsigned threads = 1) {
    if (table.dim() != model.dim)
        throw NumericError("embedding dim " + std::to_string(table.dim()) + " does not match cluster model dim " +
                           std::to_string(model.dim));
    NearestTable out;
    out.schema = seed.schema();
    const std::size_t ncat = out.schema.size();

    std::set<std::string> unique;
    for (const auto& c : candidate_list) unique.insert(normalize_word(c));
    for (const auto& c : unique) {
        if (seed.contains(c)) {
            out.skipped_in_seed.push_back(c);
            continue;
        }
        ++out.candidate_coverage.requested;
        if (table.contains(c))
            out.candidates.push_back(c);
        else
            out.candidate_coverage.missing.push_back(c);
    }

    const CoveredWords targets = covered_lexicon_words(table, seed);
    std::vector<EmotionVector> target_flags;
    for (const auto& w : targets.words) target_flags.push_back(seed.find(w)->emotions);
    for (std::size_t e = 0; e < ncat; ++e) {
        const bool carried = std::any_of(target_flags.begin(), target_flags.end(), [e](EmotionVector v) { return v.test(e); });
        if (!carried) {
            out.unexpandable.push_back(e);
            warn("no embedded seed word carries '" + out.schema.name(e) + "'; it cannot be expanded");
        }
    }

    const auto dens = detail::densities(model.gmm);
    out.best.assign(out.candidates.size(), std::vector<std::optional<Support>>(ncat));
    parallel_for(out.candidates.size(), threads, [&](std::size_t ci) {
        const std::size_t crow = *table.index_of(out.candidates[ci]);
        const Vec cvec = table.row(crow);
        const auto p = detail::posterior_with(model.gmm, dens, model.pca.project(cvec));
        auto& best = out.best[ci];
        for (std::size_t t = 0; t < targets.words.size(); ++t) {
            const std::size_t trow = targets.rows[t];
            const double s = cosine_similarity(cvec, table.row(trow), table.norm(crow), table.norm(trow));
            const double calibrated = calibrate_raw(s, p, model.stats);
            // targets are in sorted order, so a strict > keeps the smaller word on ties
            for (std::size_t e = 0; e < ncat; ++e) {
                if (!target_flags[t].test(e)) continue;
                if (!best[e] || calibrated > best[e]->similarity) best[e] = Support{targets.words[t], calibrated};
            }
        }
    });
    return out;
}

inline double binary_entropy(double r) {
    if (r <= 0.0 || r >= 1.0) return 0.0;
    return -(r * std::log2(r) + (1.0 - r) * std::log2(1.0 - r));
}

/// Diversity diagnostics of an expansion at one threshold.
inline ThresholdDiagnostics diagnostics(const ExpansionResult& result) {
    const auto& schema = result.expanded_lexicon.schema();
    const std::size_t ncat = schema.size();
    ThresholdDiagnostics d;
    d.theta = result.theta;
    d.total_new_assignments = result.assignments.size();
    d.unique_words_expanded = result.expanded_lexicon.size();
    d.per_emotion.assign(ncat, {});

    std::set<EmotionVector> patterns;
    std::vector<std::uint64_t> words_with(ncat, 0);
    for (const auto& [_, e] : result.expanded_lexicon) {
        patterns.insert(e.emotions);
        for (std::size_t c = 0; c < ncat; ++c)
            if (e.emotions.test(c)) ++words_with[c];
    }
    d.unique_patterns = patterns.size();

    std::vector<std::uint64_t> counts(ncat, 0);
    for (const auto& a : result.assignments) ++counts[a.emotion];

    const std::uint64_t n = d.unique_words_expanded;
    if (n >= 2) {
        // sum over unordered pairs of differing bits = sum_e k_e (n - k_e)
        std::uint64_t differing = 0;
        for (std::size_t c = 0; c < ncat; ++c) differing += words_with[c] * (n - words_with[c]);
        d.avg_hamming = static_cast<double>(differing) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
    }
    d.avg_hamming_norm = d.avg_hamming / static_cast<double>(ncat);

    if (d.total_new_assignments > 0) {
        double h = 0.0;
        for (std::size_t c = 0; c < ncat; ++c) {
            if (counts[c] == 0) continue;
            const double q = static_cast<double>(counts[c]) / static_cast<double>(d.total_new_assignments);
            h -= q * std::log2(q);
        }
        d.overall_entropy = std::max(0.0, h);
    }
    for (std::size_t c = 0; c < ncat; ++c) {
        d.per_emotion[c].count = counts[c];
        if (n > 0) d.per_emotion[c].binary_entropy = binary_entropy(static_cast<double>(words_with[c]) / static_cast<double>(n));
    }
    return d;
}

/// Assign category e to a candidate when its nearest seed word for e has calibrated
/// similarity strictly above theta.
inline ExpansionResult expand_at(const NearestTable& nearest, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
    ExpansionResult r;
    r.theta = theta;
    r.expanded_lexicon = Lexicon(nearest.schema);
    r.candidate_coverage = nearest.candidate_coverage;
    r.skipped_in_seed = nearest.skipped_in_seed;
    r.unexpandable = nearest.unexpandable;

    for (std::size_t ci = 0; ci < nearest.candidates.size(); ++ci) {
        LexiconEntry entry{nearest.candidates[ci], {}, Provenance::expanded, {}};
        for (std::size_t e = 0; e < nearest.schema.size(); ++e) {
            const auto& best = nearest.best[ci][e];
            if (!best || !(best->similarity > theta)) continue;
            entry.emotions.set(e);
            entry.support[e] = *best;
            r.assignments.push_back({entry.word, e, best->nearest, best->similarity});
        }
        if (!entry.emotions.none()) r.expanded_lexicon.insert(std::move(entry));
    }
    r.diagnostics = diagnostics(r);
    return r;
}

inline ExpansionResult expand_at(const std::vector<std::string>& candidates, const Lexicon& seed,
                                 const EmbeddingTable& table, const ClusterModel& model, double theta,
                                 unsigned threads = 1) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
    return expand_at(nearest_by_emotion(candidates, seed, table, model, threads), theta);
}

/// Threshold grid theta_min + k*step up to theta_max, in exact decimal steps of 1e-9.
inline std::vector<double> theta_grid(double theta_min = 0.05, double theta_max = 0.95, double step = 0.05) {
    if (!(theta_min > 0.0 && theta_min <= theta_max && theta_max < 1.0))
        throw std::invalid_argument("theta grid needs 0 < theta_min <= theta_max < 1");
    if (!(step > 0.0)) throw std::invalid_argument("theta grid step must be positive");
    constexpr double kScale = 1e9;
    const auto lo = std::llround(theta_min * kScale);
    const auto hi = std::llround(theta_max * kScale);
    const auto inc = std::llround(step * kScale);
    if (inc <= 0) throw std::invalid_argument("theta grid step below 1e-9 resolution");
    std::vector<double> grid;
    for (long long t = lo; t <= hi; t += inc) grid.push_back(static_cast<double>(t) / kScale);
    if (grid.empty()) throw std::invalid_argument("empty theta grid");
    return grid;
}

struct SweepReport {
    CategorySchema schema;
    std::vector<ThresholdDiagnostics> rows;
};

inline SweepReport sweep(const NearestTable& nearest, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty theta grid");
    SweepReport report{nearest.schema, {}};
    for (double theta : grid) report.rows.push_back(expand_at(nearest, theta).diagnostics);
    return report;
}

inline SweepReport sweep(const std::vector<std::string>& candidates, const Lexicon& seed, const EmbeddingTable& table,
                         const ClusterModel& model, double theta_min = 0.05, double theta_max = 0.95,
                         double step = 0.05, unsigned threads = 1) {
    const auto grid = theta_grid(theta_min, theta_max, step);
    return sweep(nearest_by_emotion(candidates, seed, table, model, threads), grid);
}

inline std::string sweep_csv(const SweepReport& report) {
    std::string out =
        "theta,total_new_assignments,unique_words_expanded,unique_patterns,avg_hamming,avg_hamming_norm,"
        "overall_entropy_bits";
    for (const auto& name : report.schema.names()) out += ",count_" + name + ",bent_" + name;
    out += '\n';
    for (const auto& d : report.rows) {
        out += format_real(d.theta) + ',' + std::to_string(d.total_new_assignments) + ',' +
               std::to_string(d.unique_words_expanded) + ',' + std::to_string(d.unique_patterns) + ',' +
               format_real(d.avg_hamming) + ',' + format_real(d.avg_hamming_norm) + ',' +
               format_real(d.overall_entropy);
        for (const auto& pe : d.per_emotion)
            out += ',' + std::to_string(pe.count) + ',' + format_real(pe.binary_entropy);
        out += '\n';
    }
    return out;
}

inline Json to_json(const ThresholdDiagnostics& d, const CategorySchema& schema) {
    Json j;
    j["theta"] = d.theta;
    j["total_new_assignments"] = d.total_new_assignments;
    j["unique_words_expanded"] = d.unique_words_expanded;
    j["unique_patterns"] = d.unique_patterns;
    j["avg_hamming"] = d.avg_hamming;
    j["avg_hamming_norm"] = d.avg_hamming_norm;
    j["overall_entropy_bits"] = d.overall_entropy;
    Json per = Json::object();
    for (std::size_t e = 0; e < d.per_emotion.size(); ++e)
        per[schema.name(e)] = {{"count", d.per_emotion[e].count}, {"binary_entropy", d.per_emotion[e].binary_entropy}};
    j["per_emotion"] = std::move(per);
    return j;
}

inline Json to_json(const ExpansionResult& r) {
    const auto& schema = r.expanded_lexicon.schema();
    Json j;
    j["theta"] = r.theta;
    j["assignments"] = Json::array();
    for (const auto& a : r.assignments)
        j["assignments"].push_back(
            {{"word", a.word}, {"emotion", schema.name(a.emotion)}, {"nearest", a.nearest}, {"sim", a.similarity}});
    j["diagnostics"] = to_json(r.diagnostics, schema);
    j["candidate_coverage"] = r.candidate_coverage.to_json();
    j["skipped_in_seed"] = r.skipped_in_seed;
    Json unexp = Json::array();
    for (auto e : r.unexpandable) unexp.push_back(schema.name(e));
    j["unexpandable"] = std::move(unexp);
    return j;
}

}  // namespace elex
