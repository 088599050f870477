#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "elex/error.hpp"

namespace elex {

using Json = nlohmann::ordered_json;

enum class RealFormat {
    shortest,      // shortest round-trip representation
    digits17,      // %.17g
};

inline std::string format_real(double x, RealFormat fmt = RealFormat::shortest) {
    if (!std::isfinite(x)) throw NumericError("cannot serialize non-finite value");
    char buf[64];
    if (fmt == RealFormat::digits17) {
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

namespace detail {

inline void write_json(std::ostream& os, const Json& j, RealFormat fmt, int indent, int depth) {
    auto newline = [&](int d) {
        if (indent < 0) return;
        os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) { os << "{}"; return; }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                os << Json(it.key()).dump() << (indent < 0 ? ":" : ": ");
                write_json(os, it.value(), fmt, indent, depth + 1);
            }
            newline(depth);
            os << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) { os << "[]"; return; }
            os << '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',';
                first = false;
                newline(depth + 1);
                write_json(os, v, fmt, indent, depth + 1);
            }
            newline(depth);
            os << ']';
            return;
        }
        case Json::value_t::number_float:
            os << format_real(j.get<double>(), fmt);
            return;
        default:
            os << j.dump();
    }
}

}  // namespace detail

// Deterministic JSON text: key order as inserted, reals per `fmt`. indent < 0 is compact.
inline std::string dump_json(const Json& j, RealFormat fmt = RealFormat::shortest, int indent = -1) {
    std::ostringstream os;
    detail::write_json(os, j, fmt, indent, 0);
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text, std::size_t line = 0) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what(), line);
    }
}

// Calls fn(line_number, line) for every line; strips a trailing '\r'.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        fn(number, line);
    }
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    for_each_line(in, std::forward<Fn>(fn));
}

}  // namespace elex
