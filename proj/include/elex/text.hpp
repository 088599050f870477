#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "elex/error.hpp"

namespace elex {

namespace detail {

inline icu::UnicodeString to_unicode(std::string_view utf8) {
    return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

inline std::string to_utf8(const icu::UnicodeString& s) {
    std::string out;
    s.toUTF8String(out);
    return out;
}

inline icu::UnicodeString fold(icu::UnicodeString s) {
    s.toLower(icu::Locale::getRoot());
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
    icu::UnicodeString normalized = nfc->normalize(s, status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
    return normalized;
}

}  // namespace detail

// Lowercase + NFC. The lexicon key form for every word in the toolkit.
inline std::string normalize_word(std::string_view word) {
    return detail::to_utf8(detail::fold(detail::to_unicode(word)));
}

inline bool contains_whitespace(std::string_view utf8) {
    const icu::UnicodeString s = detail::to_unicode(utf8);
    for (int32_t i = 0; i < s.length();) {
        const UChar32 c = s.char32At(i);
        if (u_isUWhiteSpace(c)) return true;
        i += U16_LENGTH(c);
    }
    return false;
}

/// Split text into lookup tokens.
///
/// Lowercases, splits on Unicode whitespace and strips leading/trailing Unicode
/// punctuation from each piece. Internal punctuation ("climate-change") is kept.
/// No stemming or lemmatization.
inline std::vector<std::string> tokenize(std::string_view text) {
    const icu::UnicodeString s = detail::fold(detail::to_unicode(text));
    std::vector<std::string> tokens;
    const int32_t n = s.length();
    int32_t i = 0;
    while (i < n) {
        while (i < n && u_isUWhiteSpace(s.char32At(i))) i += U16_LENGTH(s.char32At(i));
        int32_t start = i;
        while (i < n && !u_isUWhiteSpace(s.char32At(i))) i += U16_LENGTH(s.char32At(i));
        int32_t end = i;

        while (start < end && u_ispunct(s.char32At(start))) start += U16_LENGTH(s.char32At(start));
        while (end > start) {
            const int32_t prev = s.moveIndex32(end, -1);
            if (!u_ispunct(s.char32At(prev))) break;
            end = prev;
        }
        if (end > start) tokens.push_back(detail::to_utf8(s.tempSubStringBetween(start, end)));
    }
    return tokens;
}

}  // namespace elex
