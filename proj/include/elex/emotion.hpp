#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace elex {

// Canonical NRC emotion order. Every vector, file and report in the toolkit uses it.
inline constexpr std::array<std::string_view, 8> kEmotionNames = {
    "anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust"};

inline constexpr std::size_t kNumEmotions = kEmotionNames.size();

// NRC sentiment rows; ingested and skipped unless named as extra categories.
inline constexpr std::array<std::string_view, 2> kSentimentNames = {"negative", "positive"};

inline constexpr std::size_t kMaxCategories = 16;

/// Ordered list of category names making up an EmotionVector.
///
/// The default schema is the eight NRC emotions. Extra categories may be appended
/// (for example `positive`) to widen the vectors without touching any other code.
class CategorySchema {
public:
    CategorySchema() : names_(kEmotionNames.begin(), kEmotionNames.end()) {}

    static CategorySchema with_extra(const std::vector<std::string>& extra) {
        CategorySchema schema;
        for (const auto& name : extra) {
            if (schema.index_of(name)) throw std::invalid_argument("duplicate category: " + name);
            if (name.empty()) throw std::invalid_argument("empty category name");
            schema.names_.push_back(name);
        }
        if (schema.names_.size() > kMaxCategories)
            throw std::invalid_argument("too many categories (max 16)");
        return schema;
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    std::vector<std::string> extra() const {
        return {names_.begin() + static_cast<std::ptrdiff_t>(kNumEmotions), names_.end()};
    }

    bool operator==(const CategorySchema&) const = default;

private:
    std::vector<std::string> names_;
};

/// Binary category flags, bit i = category i of the owning schema.
class EmotionVector {
public:
    constexpr EmotionVector() = default;
    constexpr explicit EmotionVector(std::uint16_t bits) : bits_(bits) {}

    constexpr bool test(std::size_t i) const { return (bits_ >> i) & 1u; }
    constexpr void set(std::size_t i, bool on = true) {
        if (on)
            bits_ = static_cast<std::uint16_t>(bits_ | (1u << i));
        else
            bits_ = static_cast<std::uint16_t>(bits_ & ~(1u << i));
    }
    constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool none() const { return bits_ == 0; }
    constexpr std::uint16_t bits() const { return bits_; }

    constexpr EmotionVector operator|(EmotionVector o) const {
        return EmotionVector(static_cast<std::uint16_t>(bits_ | o.bits_));
    }

    constexpr auto operator<=>(const EmotionVector&) const = default;

private:
    std::uint16_t bits_ = 0;
};

inline std::size_t hamming(EmotionVector a, EmotionVector b) {
    return static_cast<std::size_t>(std::popcount(static_cast<std::uint16_t>(a.bits() ^ b.bits())));
}

}  // namespace elex
