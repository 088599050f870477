#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "elex/emotion.hpp"
#include "elex/error.hpp"
#include "elex/json_io.hpp"
#include "elex/text.hpp"

namespace elex {

enum class Provenance { original, expanded };

inline std::string_view to_string(Provenance p) { return p == Provenance::original ? "original" : "expanded"; }

// Evidence behind one expanded emotion flag.
struct Support {
    std::string nearest;
    double similarity = 0.0;

    bool operator==(const Support&) const = default;
};

struct LexiconEntry {
    std::string word;
    EmotionVector emotions;
    Provenance source = Provenance::original;
    std::map<std::size_t, Support> support;  // category index -> evidence; expanded entries only

    bool operator==(const LexiconEntry&) const = default;
};

/// Word-keyed emotion lexicon over a category schema.
///
/// Entries are kept sorted by word, so iteration order is deterministic. A Lexicon is
/// treated as an immutable value once built; merge() returns a new one.
class Lexicon {
public:
    using Map = std::map<std::string, LexiconEntry, std::less<>>;

    Lexicon() = default;
    explicit Lexicon(CategorySchema schema) : schema_(std::move(schema)) {}

    const CategorySchema& schema() const noexcept { return schema_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    const LexiconEntry* find(std::string_view word) const {
        auto it = entries_.find(word);
        return it == entries_.end() ? nullptr : &it->second;
    }
    bool contains(std::string_view word) const { return entries_.find(word) != entries_.end(); }

    // Validates the entry invariants and inserts. Throws on duplicate words.
    void insert(LexiconEntry entry) {
        validate(entry);
        std::string key = entry.word;
        auto [it, inserted] = entries_.emplace(std::move(key), std::move(entry));
        if (!inserted) throw std::invalid_argument("duplicate lexicon word: " + it->first);
    }

    std::vector<std::string> words() const {
        std::vector<std::string> out;
        out.reserve(entries_.size());
        for (const auto& [w, _] : entries_) out.push_back(w);
        return out;
    }

    bool operator==(const Lexicon&) const = default;

private:
    void validate(const LexiconEntry& e) const {
        if (e.word.empty()) throw std::invalid_argument("empty lexicon word");
        if (contains_whitespace(e.word)) throw std::invalid_argument("lexicon word contains whitespace: " + e.word);
        if (normalize_word(e.word) != e.word)
            throw std::invalid_argument("lexicon word not lowercase NFC: " + e.word);
        if (e.emotions.bits() >> schema_.size())
            throw std::invalid_argument("flag outside category schema: " + e.word);
        if (e.source == Provenance::original) {
            if (!e.support.empty()) throw std::invalid_argument("support on original entry: " + e.word);
            return;
        }
        for (std::size_t i = 0; i < schema_.size(); ++i) {
            const bool flagged = e.emotions.test(i);
            const bool supported = e.support.count(i) != 0;
            if (flagged != supported)
                throw std::invalid_argument("expanded entry support does not match its flags: " + e.word);
        }
        for (const auto& [_, s] : e.support)
            if (!(s.similarity >= 0.0 && s.similarity <= 1.0))
                throw std::invalid_argument("support similarity outside [0,1]: " + e.word);
    }

    CategorySchema schema_;
    Map entries_;
};

enum class LexiconFormat { automatic, tsv, jsonl };

struct LexiconLoadOptions {
    bool keep_zero_entries = false;
    std::vector<std::string> extra_categories;
    LexiconFormat format = LexiconFormat::automatic;
};

namespace detail {

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline LexiconFormat resolve_format(const std::string& path, LexiconFormat f) {
    if (f != LexiconFormat::automatic) return f;
    return ends_with(path, ".jsonl") ? LexiconFormat::jsonl : LexiconFormat::tsv;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

inline bool is_nrc_category(std::string_view cat) {
    return std::find(kEmotionNames.begin(), kEmotionNames.end(), cat) != kEmotionNames.end() ||
           std::find(kSentimentNames.begin(), kSentimentNames.end(), cat) != kSentimentNames.end();
}

inline std::string checked_word(std::string_view raw, std::size_t line) {
    std::string word = normalize_word(raw);
    if (word.empty()) throw FormatError("empty word", line);
    if (contains_whitespace(word)) throw FormatError("word contains whitespace: '" + word + "'", line);
    return word;
}

inline Lexicon load_tsv(std::istream& in, const LexiconLoadOptions& opts) {
    const CategorySchema schema = CategorySchema::with_extra(opts.extra_categories);
    std::map<std::string, EmotionVector, std::less<>> folded;
    std::map<std::string, std::set<std::string>, std::less<>> surfaces;

    for_each_line(in, [&](std::size_t n, const std::string& line) {
        if (line.empty()) return;
        const auto fields = split_tabs(line);
        if (fields.size() != 3)
            throw FormatError("expected word<TAB>category<TAB>flag, got " + std::to_string(fields.size()) + " fields", n);
        const std::string_view flag = fields[2];
        if (flag != "0" && flag != "1") throw FormatError("flag must be 0 or 1, got '" + std::string(flag) + "'", n);
        const std::string category(fields[1]);
        std::string word = checked_word(fields[0], n);
        surfaces[word].insert(std::string(fields[0]));

        auto& vec = folded[word];
        if (auto idx = schema.index_of(category)) {
            if (flag == "1") vec.set(*idx);
        } else if (!is_nrc_category(category)) {
            throw FormatError("unknown category '" + category + "'", n);
        }
    });

    Lexicon lex(schema);
    for (auto& [word, vec] : folded) {
        if (surfaces[word].size() > 1) {
            std::string forms;
            for (const auto& s : surfaces[word]) forms += " " + s;
            warn("case-folded duplicates OR-merged into '" + word + "':" + forms);
        }
        if (vec.none() && !opts.keep_zero_entries) continue;
        lex.insert({word, vec, Provenance::original, {}});
    }
    return lex;
}

inline Lexicon load_jsonl(std::istream& in, const LexiconLoadOptions& opts) {
    const CategorySchema schema = CategorySchema::with_extra(opts.extra_categories);
    Lexicon lex(schema);
    for_each_line(in, [&](std::size_t n, const std::string& line) {
        if (line.empty()) return;
        const Json rec = parse_json(line, n);
        try {
            LexiconEntry e;
            e.word = checked_word(rec.at("word").get<std::string>(), n);
            for (const auto& name : rec.at("emotions")) {
                auto idx = schema.index_of(name.get<std::string>());
                if (!idx) throw FormatError("unknown emotion '" + name.get<std::string>() + "'", n);
                e.emotions.set(*idx);
            }
            const auto source = rec.at("source").get<std::string>();
            if (source == "original")
                e.source = Provenance::original;
            else if (source == "expanded")
                e.source = Provenance::expanded;
            else
                throw FormatError("unknown source '" + source + "'", n);
            if (rec.contains("support")) {
                for (auto it = rec["support"].begin(); it != rec["support"].end(); ++it) {
                    auto idx = schema.index_of(it.key());
                    if (!idx) throw FormatError("unknown emotion in support '" + it.key() + "'", n);
                    e.support[*idx] = Support{it.value().at("nearest").get<std::string>(),
                                              it.value().at("sim").get<double>()};
                }
            }
            if (e.emotions.none() && !opts.keep_zero_entries) return;
            if (lex.contains(e.word)) throw FormatError("duplicate word '" + e.word + "'", n);
            lex.insert(std::move(e));
        } catch (const Json::exception& ex) {
            throw FormatError(std::string("bad lexicon record: ") + ex.what(), n);
        } catch (const std::invalid_argument& ex) {
            throw FormatError(ex.what(), n);
        }
    });
    return lex;
}

}  // namespace detail

/// Load an emotion lexicon.
///
/// TSV is the NRC distribution format (`word<TAB>category<TAB>flag`). Sentiment rows
/// (`positive`/`negative`) are skipped unless named in `extra_categories`; rows of one
/// word fold into a single vector; all-zero words are dropped unless keep_zero_entries.
/// JSONL keeps provenance and support. Words are lowercased and NFC-normalized.
inline Lexicon load_lexicon(const std::string& path, const LexiconLoadOptions& opts = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon: " + path);
    return detail::resolve_format(path, opts.format) == LexiconFormat::jsonl ? detail::load_jsonl(in, opts)
                                                                             : detail::load_tsv(in, opts);
}

inline Lexicon parse_lexicon(const std::string& text, LexiconFormat format, const LexiconLoadOptions& opts = {}) {
    std::istringstream in(text);
    return format == LexiconFormat::jsonl ? detail::load_jsonl(in, opts) : detail::load_tsv(in, opts);
}

inline Json entry_to_json(const LexiconEntry& e, const CategorySchema& schema) {
    Json rec;
    rec["word"] = e.word;
    rec["emotions"] = Json::array();
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (e.emotions.test(i)) rec["emotions"].push_back(schema.name(i));
    rec["source"] = std::string(to_string(e.source));
    if (e.source == Provenance::expanded) {
        Json support = Json::object();
        for (const auto& [idx, s] : e.support) support[schema.name(idx)] = Json{{"nearest", s.nearest}, {"sim", s.similarity}};
        rec["support"] = std::move(support);
    }
    return rec;
}

inline std::string format_lexicon(const Lexicon& lex, LexiconFormat format) {
    std::string out;
    const auto& schema = lex.schema();
    for (const auto& [word, e] : lex) {
        if (format == LexiconFormat::jsonl) {
            out += dump_json(entry_to_json(e, schema));
            out += '\n';
            continue;
        }
        for (std::size_t i = 0; i < schema.size(); ++i) {
            out += word;
            out += '\t';
            out += schema.name(i);
            out += e.emotions.test(i) ? "\t1\n" : "\t0\n";
        }
    }
    return out;
}

inline void save_lexicon(const Lexicon& lex, const std::string& path, LexiconFormat format = LexiconFormat::tsv) {
    write_text_file(path, format_lexicon(lex, detail::resolve_format(path, format)));
}

/// Add expansion entries to a base lexicon. Base entries are never modified; any
/// expansion word already present in the base is a conflict and nothing is merged.
inline Lexicon merge(const Lexicon& base, const Lexicon& expansion) {
    if (!(base.schema() == expansion.schema())) throw std::invalid_argument("merge: category schemas differ");
    std::vector<std::string> conflicts;
    for (const auto& [word, e] : expansion) {
        if (e.source != Provenance::expanded)
            throw std::invalid_argument("merge: expansion entry '" + word + "' is not marked expanded");
        if (base.contains(word)) conflicts.push_back(word);
    }
    if (!conflicts.empty()) throw MergeConflict(std::move(conflicts));

    Lexicon out = base;
    for (const auto& [_, e] : expansion) out.insert(e);
    return out;
}

}  // namespace elex
