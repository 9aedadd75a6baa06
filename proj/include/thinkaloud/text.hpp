#pragma once
// Shared text primitives: word splitting, content words, set similarity.
//
// A word is a maximal run of letters, digits, apostrophes and non-ASCII
// bytes; apostrophes at either end of a run are trimmed. Words are compared
// lower-cased. A content word is a word with at least one alphabetic
// character that is not a stopword.

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace thinkaloud::text {

using WordSet = std::set<std::string>;

// Replaces U+2019 (right single quotation mark) with an ASCII apostrophe.
std::string normalize_apostrophes(std::string_view s);

std::string to_lower(std::string_view s);

bool has_alpha(std::string_view word);

// Lower-cased words in order of appearance.
std::vector<std::string> words(std::string_view s);

std::vector<std::string> content_words(std::string_view s, const WordSet& stopwords);

WordSet content_word_set(std::string_view s, const WordSet& stopwords);

// |a ∩ b| / |a ∪ b|; 0 when both sets are empty.
double jaccard(const WordSet& a, const WordSet& b);

std::size_t overlap(const WordSet& a, const WordSet& b);

// Truncates to at most max_chars code points without splitting a UTF-8 sequence.
std::string truncate_chars(std::string_view s, std::size_t max_chars);

std::size_t char_count(std::string_view s);

// Text up to and including the first '.', '!' or '?' that ends a sentence.
std::string first_sentence(std::string_view s);

std::string trim(std::string_view s);

// Joins non-empty parts with single spaces.
std::string join_words(const std::vector<std::string>& parts);

}  // namespace thinkaloud::text
