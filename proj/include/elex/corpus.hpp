#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "elex/error.hpp"
#include "elex/json_io.hpp"
#include "elex/text.hpp"

namespace elex {

enum class Stance { For, Against };
enum class CorpusSource { amt, ukp, pe, ibm };
enum class LabelDecision { For, Against, Skip };

inline std::string_view to_string(Stance s) { return s == Stance::For ? "For" : "Against"; }

inline std::string_view to_string(CorpusSource s) {
    switch (s) {
        case CorpusSource::amt: return "amt";
        case CorpusSource::ukp: return "ukp";
        case CorpusSource::pe: return "pe";
        case CorpusSource::ibm: return "ibm";
    }
    return "?";
}

inline CorpusSource parse_source(std::string_view s) {
    if (s == "amt") return CorpusSource::amt;
    if (s == "ukp") return CorpusSource::ukp;
    if (s == "pe") return CorpusSource::pe;
    if (s == "ibm") return CorpusSource::ibm;
    throw FormatError("unknown corpus source '" + std::string(s) + "'");
}

namespace detail {

inline std::string ascii_lower_trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace detail

/// Project a corpus-native stance label onto For / Against / Skip.
///
///   amt: pro, opp
///   ibm: pro, con
///   ukp: for, support, against, oppose, noargument (skipped)
///   pe:  for, against (claim stance attribute)
///
/// Matching is case-insensitive. Anything else is a FormatError.
inline LabelDecision map_label(std::string_view raw, CorpusSource source) {
    const std::string label = detail::ascii_lower_trim(raw);
    if (label.empty()) throw FormatError("empty stance label for source " + std::string(to_string(source)));
    switch (source) {
        case CorpusSource::amt:
            if (label == "pro") return LabelDecision::For;
            if (label == "opp") return LabelDecision::Against;
            break;
        case CorpusSource::ibm:
            if (label == "pro") return LabelDecision::For;
            if (label == "con") return LabelDecision::Against;
            break;
        case CorpusSource::ukp:
            if (label == "for" || label == "support") return LabelDecision::For;
            if (label == "against" || label == "oppose") return LabelDecision::Against;
            if (label == "noargument") return LabelDecision::Skip;
            break;
        case CorpusSource::pe:
            if (label == "for") return LabelDecision::For;
            if (label == "against") return LabelDecision::Against;
            break;
    }
    throw FormatError("unknown stance label '" + std::string(raw) + "' for source " + std::string(to_string(source)));
}

// Accepts only the unified labels For / Against (case-insensitive).
inline LabelDecision map_unified_label(std::string_view raw) {
    const std::string label = detail::ascii_lower_trim(raw);
    if (label == "for") return LabelDecision::For;
    if (label == "against") return LabelDecision::Against;
    throw FormatError("unknown unified stance label '" + std::string(raw) + "'");
}

struct StanceRecord {
    std::string id;
    std::string topic;
    std::string text;
    Stance stance = Stance::For;
    CorpusSource source = CorpusSource::amt;

    bool operator==(const StanceRecord&) const = default;
};

enum class LabelSet { native, unified };

// Which input fields hold what. The defaults read the unified schema itself.
struct FieldMapping {
    std::string id_field = "id";
    std::string topic_field = "topic";
    std::string text_field = "text";
    std::string label_field = "stance";
    LabelSet labels = LabelSet::native;
};

struct RowError {
    std::size_t input = 0;  // index of the input stream
    std::size_t row = 0;    // 1-based line number
    std::string message;
};

struct ConvertResult {
    std::vector<StanceRecord> records;
    std::size_t rows = 0;
    std::size_t skipped = 0;
    std::vector<RowError> errors;

    bool all_failed() const { return rows > 0 && errors.size() == rows; }
};

namespace detail {

inline std::string field_string(const Json& row, const std::string& field) {
    if (!row.contains(field)) throw FormatError("missing field '" + field + "'");
    const Json& v = row[field];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    throw FormatError("field '" + field + "' is not a string");
}

}  // namespace detail

/// Convert flattened JSONL rows into unified stance records. Rows with a Skip label are
/// dropped and counted; malformed rows are reported with their line number and skipped.
/// Several inputs (e.g. both microtext parts) are concatenated in order.
inline void convert_into(std::istream& in, std::size_t input_index, CorpusSource source, const FieldMapping& map,
                         ConvertResult& out) {
    for_each_line(in, [&](std::size_t n, const std::string& line) {
        if (line.find_first_not_of(" \t") == std::string::npos) return;
        ++out.rows;
        try {
            const Json row = parse_json(line, n);
            if (!row.is_object()) throw FormatError("row is not a JSON object");
            const std::string label = detail::field_string(row, map.label_field);
            const LabelDecision decision =
                map.labels == LabelSet::unified ? map_unified_label(label) : map_label(label, source);
            if (decision == LabelDecision::Skip) {
                ++out.skipped;
                return;
            }
            StanceRecord rec;
            rec.id = detail::field_string(row, map.id_field);
            rec.topic = detail::field_string(row, map.topic_field);
            rec.text = detail::field_string(row, map.text_field);
            if (rec.topic.find_first_not_of(" \t\r\n") == std::string::npos) throw FormatError("empty topic");
            if (rec.text.find_first_not_of(" \t\r\n") == std::string::npos) throw FormatError("empty text");
            rec.stance = decision == LabelDecision::For ? Stance::For : Stance::Against;
            rec.source = source;
            out.records.push_back(std::move(rec));
        } catch (const FormatError& e) {
            std::string msg = e.what();
            const std::string prefix = "line " + std::to_string(n) + ": ";
            if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
            out.errors.push_back({input_index, n, msg});
        }
    });
}

inline ConvertResult convert(std::istream& in, CorpusSource source, const FieldMapping& map = {}) {
    ConvertResult out;
    convert_into(in, 0, source, map, out);
    return out;
}

inline Json to_json(const StanceRecord& r) {
    return Json{{"id", r.id},
                {"topic", r.topic},
                {"text", r.text},
                {"stance", std::string(to_string(r.stance))},
                {"source", std::string(to_string(r.source))}};
}

inline std::string unified_jsonl(const std::vector<StanceRecord>& records) {
    std::string out;
    for (const auto& r : records) out += dump_json(to_json(r)) + "\n";
    return out;
}

// Reads the unified schema back; any malformed row is fatal.
inline std::vector<StanceRecord> read_unified(std::istream& in) {
    std::vector<StanceRecord> out;
    for_each_line(in, [&](std::size_t n, const std::string& line) {
        if (line.find_first_not_of(" \t") == std::string::npos) return;
        const Json row = parse_json(line, n);
        try {
            StanceRecord r;
            r.id = detail::field_string(row, "id");
            r.topic = row.at("topic").get<std::string>();
            r.text = row.at("text").get<std::string>();
            r.stance = map_unified_label(row.at("stance").get<std::string>()) == LabelDecision::For ? Stance::For
                                                                                                      : Stance::Against;
            r.source = parse_source(row.at("source").get<std::string>());
            if (r.topic.empty() || r.text.empty()) throw FormatError("empty topic or text");
            out.push_back(std::move(r));
        } catch (const FormatError& e) {
            throw FormatError(e.what(), n);
        } catch (const Json::exception& e) {
            throw FormatError(std::string("bad unified record: ") + e.what(), n);
        }
    });
    return out;
}

inline std::vector<StanceRecord> read_unified(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus: " + path);
    return read_unified(in);
}

// Size, topics, average tokens and label distribution of a unified corpus.
struct CorpusStats {
    std::size_t record_count = 0;
    std::size_t topic_count = 0;
    std::size_t total_tokens = 0;
    double mean_tokens = 0.0;
    std::size_t for_count = 0;
    std::size_t against_count = 0;

    double for_fraction() const { return static_cast<double>(for_count) / static_cast<double>(record_count); }
    double against_fraction() const { return static_cast<double>(against_count) / static_cast<double>(record_count); }
};

inline CorpusStats corpus_stats(const std::vector<StanceRecord>& records) {
    if (records.empty()) throw FormatError("corpus stats: empty record stream");
    CorpusStats s;
    std::set<std::string> topics;
    for (const auto& r : records) {
        ++s.record_count;
        topics.insert(r.topic);
        s.total_tokens += tokenize(r.text).size();
        (r.stance == Stance::For ? s.for_count : s.against_count) += 1;
    }
    s.topic_count = topics.size();
    s.mean_tokens = static_cast<double>(s.total_tokens) / static_cast<double>(s.record_count);
    return s;
}

inline Json to_json(const CorpusStats& s) {
    Json j;
    j["size"] = s.record_count;
    j["topics"] = s.topic_count;
    j["average_tokens"] = s.mean_tokens;
    j["total_tokens"] = s.total_tokens;
    j["labels"] = {{"For", {{"count", s.for_count}, {"fraction", s.for_fraction()}}},
                   {"Against", {{"count", s.against_count}, {"fraction", s.against_fraction()}}}};
    return j;
}

}  // namespace elex
