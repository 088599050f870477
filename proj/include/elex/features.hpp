#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elex/lexicon.hpp"
#include "elex/text.hpp"

namespace elex {

enum class FeatureMode {
    fraction,  // tokens carrying the emotion / all tokens
    count,     // tokens carrying the emotion
    binary,    // 1 if any token carries the emotion
};

inline FeatureMode parse_feature_mode(std::string_view s) {
    if (s == "fraction") return FeatureMode::fraction;
    if (s == "count") return FeatureMode::count;
    if (s == "binary") return FeatureMode::binary;
    throw std::invalid_argument("unknown feature mode: " + std::string(s));
}

// Lexicon-derived emotion features of one text segment, canonical category order.
struct EmotionFeatures {
    std::vector<double> values;
    std::size_t token_count = 0;
    std::size_t matched_count = 0;  // tokens found in the lexicon

    bool operator==(const EmotionFeatures&) const = default;
};

inline EmotionFeatures emotion_features(std::span<const std::string> tokens, const Lexicon& lex,
                                        FeatureMode mode = FeatureMode::fraction) {
    const std::size_t ncat = lex.schema().size();
    EmotionFeatures f;
    f.values.assign(ncat, 0.0);
    f.token_count = tokens.size();
    if (tokens.empty()) return f;

    std::vector<std::size_t> hits(ncat, 0);
    for (const auto& tok : tokens) {
        const LexiconEntry* e = lex.find(tok);
        if (!e) continue;
        ++f.matched_count;
        for (std::size_t c = 0; c < ncat; ++c)
            if (e->emotions.test(c)) ++hits[c];
    }
    for (std::size_t c = 0; c < ncat; ++c) {
        switch (mode) {
            case FeatureMode::fraction:
                f.values[c] = static_cast<double>(hits[c]) / static_cast<double>(f.token_count);
                break;
            case FeatureMode::count:
                f.values[c] = static_cast<double>(hits[c]);
                break;
            case FeatureMode::binary:
                f.values[c] = hits[c] > 0 ? 1.0 : 0.0;
                break;
        }
    }
    return f;
}

inline EmotionFeatures emotion_features(std::string_view text, const Lexicon& lex,
                                        FeatureMode mode = FeatureMode::fraction) {
    const auto tokens = tokenize(text);
    return emotion_features(std::span<const std::string>(tokens), lex, mode);
}

}  // namespace elex
