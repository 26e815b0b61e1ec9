#include "mars/text.hpp"

#include <algorithm>
#include <array>

namespace mars::text {

namespace {

constexpr std::array<std::string_view, 24> kDeterminers = {
    "a",     "an",   "another", "any",   "each",  "every", "her",  "his",
    "its",   "many", "my",      "no",    "our",   "several", "some", "that",
    "the",   "their", "these",  "this",  "those", "what",  "which", "your"};

constexpr std::array<std::string_view, 29> kAuxiliaries = {
    "am",    "are",   "be",    "been",   "being", "can",   "could", "did",
    "do",    "does",  "had",   "has",    "have",  "having", "is",   "may",
    "might", "must",  "not",   "shall",  "should", "was",  "were",  "will",
    "would", "isn",   "wasn",  "doesn",  "didn"};

constexpr std::array<std::string_view, 66> kOtherFunctionWords = {
    "about", "above", "after",  "against", "all",   "also",  "and",   "as",
    "at",    "because", "before", "below",  "between", "both", "but",  "by",
    "during", "either", "for",  "from",    "he",    "her",   "hers",  "him",
    "i",     "if",    "in",     "into",    "it",    "itself", "me",   "near",
    "neither", "nor", "of",     "off",     "on",    "onto",  "or",    "out",
    "over",  "s",     "she",    "since",   "so",    "than",  "then",  "there",
    "they",  "them",  "through", "to",     "toward", "under", "until", "up",
    "upon",  "us",    "we",     "when",    "where", "while", "who",   "whom",
    "with",  "you"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

}  // namespace

bool is_word_byte(unsigned char c) noexcept {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

bool is_space_byte(unsigned char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space_byte(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space_byte(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (is_word_byte(static_cast<unsigned char>(ch))) {
      cur += (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool is_determiner(std::string_view w) { return contains(kDeterminers, w); }

bool is_auxiliary(std::string_view w) { return contains(kAuxiliaries, w); }

bool is_stopword(std::string_view w) {
  return is_determiner(w) || is_auxiliary(w) || contains(kOtherFunctionWords, w);
}

std::string normalize_for_match(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
    } else if (is_space_byte(c)) {
      pending_space = true;
    }
    // other punctuation is dropped without breaking the word
  }
  return out;
}

}  // namespace mars::text
