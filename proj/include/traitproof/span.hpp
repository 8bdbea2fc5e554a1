#pragma once

#include <cstdint>
#include <string>
#include <tuple>

namespace traitproof {

// Source range; positions are 1-based and the end position is inclusive
// (it names the last character covered).
struct Span {
    std::string file;
    std::uint32_t line_start = 1;
    std::uint32_t col_start = 1;
    std::uint32_t line_end = 1;
    std::uint32_t col_end = 1;

    bool valid() const {
        return line_start >= 1 && col_start >= 1 &&
               std::tie(line_start, col_start) <= std::tie(line_end, col_end);
    }

    friend bool operator==(const Span&, const Span&) = default;
};

// Lexicographic source order; file name first so spans from different files
// still order totally.
inline bool span_before(const Span& a, const Span& b) {
    return std::tie(a.file, a.line_start, a.col_start, a.line_end, a.col_end) <
           std::tie(b.file, b.line_start, b.col_start, b.line_end, b.col_end);
}

// Span joining two others (a must start first).
inline Span span_cover(const Span& a, const Span& b) {
    Span s = a;
    s.line_end = b.line_end;
    s.col_end = b.col_end;
    return s;
}

// Final path component, used when printing locations compactly.
std::string display_file(const std::string& path);

// "file:line:col"
std::string format_location(const Span& span);

}  // namespace traitproof
