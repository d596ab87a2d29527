// SPDX-License-Identifier: Apache-2.0

#include "sinyal/utf8.hpp"

namespace sinyal::utf8 {

char32_t decode(std::string_view s, std::size_t& pos) {
    const unsigned char b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    auto cont = [&](std::size_t i) {
        return i < s.size() && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80;
    };
    auto cb = [&](std::size_t i) {
        return static_cast<char32_t>(static_cast<unsigned char>(s[i]) & 0x3F);
    };
    if ((b0 & 0xE0) == 0xC0 && cont(pos + 1)) {
        char32_t cp = ((b0 & 0x1Fu) << 6) | cb(pos + 1);
        if (cp >= 0x80) {
            pos += 2;
            return cp;
        }
    } else if ((b0 & 0xF0) == 0xE0 && cont(pos + 1) && cont(pos + 2)) {
        char32_t cp = ((b0 & 0x0Fu) << 12) | (cb(pos + 1) << 6) | cb(pos + 2);
        if (cp >= 0x800 && !(cp >= 0xD800 && cp <= 0xDFFF)) {
            pos += 3;
            return cp;
        }
    } else if ((b0 & 0xF8) == 0xF0 && cont(pos + 1) && cont(pos + 2) && cont(pos + 3)) {
        char32_t cp = ((b0 & 0x07u) << 18) | (cb(pos + 1) << 12) | (cb(pos + 2) << 6) | cb(pos + 3);
        if (cp >= 0x10000 && cp <= 0x10FFFF) {
            pos += 4;
            return cp;
        }
    }
    // malformed sequence: consume one byte and surface it as-is
    ++pos;
    return b0;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp < 0x80) return cp;
    // Latin-1 supplement
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    // Latin Extended-A: mostly upper/lower pairs
    if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
    if (cp == 0x130) return U'i'; // simple mapping
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x17F) return U's';
    // Latin Extended Additional (Vietnamese etc.): pairwise
    if (cp >= 0x1E00 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
    // Greek
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    // Cyrillic
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    // fullwidth Latin
    if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
    return cp;
}

namespace {

struct Range {
    char32_t lo, hi;
};

// Coarse letter ranges; classification order puts digits first so the
// digit blocks embedded in some scripts do not reach this table.
constexpr Range kLetterRanges[] = {
    {0x41, 0x5A},     {0x61, 0x7A},     {0xAA, 0xAA},     {0xB5, 0xB5},
    {0xBA, 0xBA},     {0xC0, 0xD6},     {0xD8, 0xF6},     {0xF8, 0x2AF},
    {0x370, 0x373},   {0x376, 0x377},   {0x37B, 0x37D},   {0x37F, 0x37F},
    {0x386, 0x386},   {0x388, 0x3FF},   {0x400, 0x52F},   {0x531, 0x556},
    {0x561, 0x587},   {0x5D0, 0x5EA},   {0x620, 0x64A},   {0x66E, 0x6D3},
    {0x904, 0x939},   {0x958, 0x961},   {0x971, 0x97F},   {0xE01, 0xE30},
    {0xE32, 0xE33},   {0xE40, 0xE46},   {0x1E00, 0x1EFF}, {0x3041, 0x3096},
    {0x30A1, 0x30FA}, {0x30FC, 0x30FF}, {0x3400, 0x4DBF}, {0x4E00, 0x9FFF},
    {0xAC00, 0xD7A3}, {0xFF21, 0xFF3A}, {0xFF41, 0xFF5A},
};

constexpr Range kDigitRanges[] = {
    {0x30, 0x39},     {0x660, 0x669},   {0x6F0, 0x6F9},  {0x966, 0x96F},
    {0xE50, 0xE59},   {0xFF10, 0xFF19},
};

bool in_ranges(char32_t cp, const Range* table, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (cp < table[i].lo) return false;
        if (cp <= table[i].hi) return true;
    }
    return false;
}

} // namespace

bool is_letter(char32_t cp) {
    if (is_digit(cp)) return false;
    return in_ranges(cp, kLetterRanges, std::size(kLetterRanges));
}

bool is_digit(char32_t cp) {
    return in_ranges(cp, kDigitRanges, std::size(kDigitRanges));
}

bool is_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::string lower_copy(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        encode(to_lower(decode(s, pos)), out);
    }
    return out;
}

} // namespace sinyal::utf8
