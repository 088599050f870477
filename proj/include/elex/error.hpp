#pragma once

#include <cstddef>
#include <iostream>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace elex {

// Malformed input (files, rows, labels). Carries a 1-based line number when known.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Numerical failure: degenerate data, invalid statistics, dimension mismatch.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rejected lexicon merge; lists every colliding word.
class MergeConflict : public std::runtime_error {
public:
    explicit MergeConflict(std::vector<std::string> words)
        : std::runtime_error(describe(words)), words_(std::move(words)) {}

    const std::vector<std::string>& words() const noexcept { return words_; }

private:
    static std::string describe(const std::vector<std::string>& words) {
        std::string msg = "merge conflict: expansion words already in base lexicon:";
        for (const auto& w : words) msg += " " + w;
        return msg;
    }

    std::vector<std::string> words_;
};

using WarningHandler = std::function<void(std::string_view)>;

inline WarningHandler& warning_handler() {
    static WarningHandler handler = [](std::string_view msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    return handler;
}

inline void set_warning_handler(WarningHandler handler) { warning_handler() = std::move(handler); }

inline void warn(std::string_view msg) {
    if (warning_handler()) warning_handler()(msg);
}

}  // namespace elex
