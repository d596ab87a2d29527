// SPDX-License-Identifier: Apache-2.0

#ifndef SINYAL_UTF8_HPP
#define SINYAL_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace sinyal::utf8 {

// Code point classification and simple case folding for the scripts that
// actually show up in the tweet corpora (Latin with extensions, Greek,
// Cyrillic, plus coarse ranges for other scripts). Deliberately table-driven
// and locale-free; anything unclassified counts as punctuation/symbol.

/// Decodes one code point starting at byte `pos`; advances `pos`.
/// Invalid bytes are returned verbatim as single-byte code points.
char32_t decode(std::string_view s, std::size_t& pos);

void encode(char32_t cp, std::string& out);

char32_t to_lower(char32_t cp);

bool is_letter(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);

/// Code-point-wise lowercase of a UTF-8 string.
std::string lower_copy(std::string_view s);

} // namespace sinyal::utf8

#endif
