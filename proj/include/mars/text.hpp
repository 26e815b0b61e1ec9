#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mars::text {

/// ASCII alphanumerics and any non-ASCII byte (UTF-8 continuation/lead
/// bytes are treated as letters).
bool is_word_byte(unsigned char c) noexcept;
bool is_space_byte(unsigned char c) noexcept;

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

/// Maximal runs of word bytes, lowercased.
std::vector<std::string> words(std::string_view s);

/// Closed-class English words: determiners, pronouns, auxiliaries,
/// prepositions, conjunctions. Input must be lowercase.
bool is_stopword(std::string_view lower_word);
bool is_determiner(std::string_view lower_word);
bool is_auxiliary(std::string_view lower_word);

/// Lowercase, punctuation stripped, whitespace collapsed and trimmed.
std::string normalize_for_match(std::string_view s);

}  // namespace mars::text
