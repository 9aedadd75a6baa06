#include "thinkaloud/text.hpp"

#include <algorithm>
#include <cctype>

namespace thinkaloud::text {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c == '\'' || c >= 0x80;
}

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

}  // namespace

std::string normalize_apostrophes(std::string_view s) {
    static constexpr std::string_view kRightQuote = "\xE2\x80\x99";
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s.substr(i, kRightQuote.size()) == kRightQuote) {
            out.push_back('\'');
            i += kRightQuote.size();
        } else {
            out.push_back(s[i++]);
        }
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool has_alpha(std::string_view word) {
    return std::any_of(word.begin(), word.end(), [](unsigned char c) {
        return std::isalpha(c) || c >= 0x80;
    });
}

std::vector<std::string> words(std::string_view input) {
    const std::string s = normalize_apostrophes(input);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && !is_word_byte(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && is_word_byte(static_cast<unsigned char>(s[j]))) ++j;
        std::size_t b = i, e = j;
        while (b < e && s[b] == '\'') ++b;
        while (e > b && s[e - 1] == '\'') --e;
        if (b < e) out.push_back(to_lower(std::string_view(s).substr(b, e - b)));
        i = j;
    }
    return out;
}

std::vector<std::string> content_words(std::string_view s, const WordSet& stopwords) {
    std::vector<std::string> out;
    for (auto& w : words(s)) {
        if (has_alpha(w) && !stopwords.contains(w)) out.push_back(std::move(w));
    }
    return out;
}

WordSet content_word_set(std::string_view s, const WordSet& stopwords) {
    auto v = content_words(s, stopwords);
    return WordSet(std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
}

std::size_t overlap(const WordSet& a, const WordSet& b) {
    std::size_t n = 0;
    for (const auto& w : a) n += b.contains(w) ? 1 : 0;
    return n;
}

double jaccard(const WordSet& a, const WordSet& b) {
    if (a.empty() && b.empty()) return 0.0;
    const std::size_t inter = overlap(a, b);
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t char_count(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](unsigned char c) { return (c & 0xC0) != 0x80; }));
}

std::string truncate_chars(std::string_view s, std::size_t max_chars) {
    std::size_t chars = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
            if (chars == max_chars) return std::string(s.substr(0, i));
            ++chars;
        }
    }
    return std::string(s);
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string first_sentence(std::string_view input) {
    const std::string s = trim(input);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c != '.' && c != '!' && c != '?') continue;
        if (i + 1 == s.size() || is_space(static_cast<unsigned char>(s[i + 1]))) {
            return s.substr(0, i + 1);
        }
    }
    return s;
}

std::string join_words(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (p.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out += p;
    }
    return out;
}

}  // namespace thinkaloud::text
