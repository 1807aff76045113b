#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 handling for Portuguese transcript text. Covers what the
// tokenizer and normalizer need: codepoint iteration, codepoint-indexed
// slicing, Latin-script lowercasing and composition of the combining
// diacritics that occur in Portuguese orthography.
namespace negcorpus::utf8 {

// Decodes the codepoint starting at byte offset `i` and advances `i` past
// it. Malformed bytes decode as U+FFFD and advance one byte.
char32_t decode(std::string_view text, std::size_t& i);

std::string encode(char32_t cp);

std::vector<char32_t> decode_all(std::string_view text);
std::string encode_all(const std::vector<char32_t>& cps);

// Number of codepoints in `text`.
std::size_t count(std::string_view text);

// Slice by codepoint offsets [begin, end).
std::string substr(std::string_view text, std::size_t begin, std::size_t end);

// ASCII whitespace (space, tab, CR, LF, FF, VT).
bool is_space(char32_t cp);

char32_t to_lower(char32_t cp);

// Composes a (base, combining mark) pair into its precomposed form, or
// returns 0 when no composition is known.
char32_t compose(char32_t base, char32_t mark);

// Canonical token form: lowercased, with combining diacritics composed so
// that "não" compares equal whether the source was precomposed or not.
std::string normalize(std::string_view text);

}  // namespace negcorpus::utf8
