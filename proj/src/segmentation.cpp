#include <string>
#include <vector>

#include "mars/importance.hpp"
#include "mars/text.hpp"

namespace mars {

namespace {

enum class WordKind { Blank, Punct, Determiner, Auxiliary, Function, Content };

struct Word {
  Span tokens;
  WordKind kind = WordKind::Content;
  bool capitalized = false;
};

bool starts_with_space(const std::string& s) {
  return !s.empty() && text::is_space_byte(static_cast<unsigned char>(s.front()));
}

bool ends_with_space(const std::string& s) {
  return !s.empty() && text::is_space_byte(static_cast<unsigned char>(s.back()));
}

// Word-byte class of the first/last non-space byte; -1 if all space.
int edge_class(const std::string& s, bool first) {
  if (first) {
    for (unsigned char c : s) {
      if (!text::is_space_byte(c)) return text::is_word_byte(c) ? 1 : 0;
    }
  } else {
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      const auto c = static_cast<unsigned char>(*it);
      if (!text::is_space_byte(c)) return text::is_word_byte(c) ? 1 : 0;
    }
  }
  return -1;
}

std::vector<Span> word_spans(const Generation& gen) {
  std::vector<Span> spans;
  const auto& toks = gen.tokens;
  std::size_t start = 0;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto& prev = toks[i - 1].text;
    const auto& cur = toks[i].text;
    const int pc = edge_class(prev, false);
    const int cc = edge_class(cur, true);
    const bool boundary = starts_with_space(cur) || ends_with_space(prev) ||
                          pc < 0 || cc < 0 || pc != cc;
    if (boundary) {
      spans.push_back({start, i});
      start = i;
    }
  }
  if (!toks.empty()) spans.push_back({start, toks.size()});
  return spans;
}

Word classify(const Generation& gen, Span span) {
  std::string surface;
  for (std::size_t i = span.start; i < span.end; ++i) {
    surface += gen.tokens[i].text;
  }
  const std::string stripped = text::trim(surface);
  Word w{span, WordKind::Content, false};
  if (stripped.empty()) {
    w.kind = WordKind::Blank;
    return w;
  }
  if (!text::is_word_byte(static_cast<unsigned char>(stripped.front()))) {
    w.kind = WordKind::Punct;
    return w;
  }
  const std::string lower = text::to_lower(stripped);
  if (text::is_determiner(lower)) {
    w.kind = WordKind::Determiner;
  } else if (text::is_auxiliary(lower)) {
    w.kind = WordKind::Auxiliary;
  } else if (text::is_stopword(lower)) {
    w.kind = WordKind::Function;
  } else {
    w.capitalized = stripped.front() >= 'A' && stripped.front() <= 'Z';
  }
  return w;
}

}  // namespace

PhraseSegmentation segment_words(const Generation& gen) {
  return PhraseSegmentation(word_spans(gen), gen.tokens.size());
}

PhraseSegmentation segment_phrases(const Generation& gen,
                                   std::string_view /*question*/) {
  std::vector<Word> words;
  for (const Span& s : word_spans(gen)) words.push_back(classify(gen, s));

  auto is_content = [&](std::size_t j) {
    return j < words.size() && words[j].kind == WordKind::Content;
  };

  std::vector<Span> phrases;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t j = i + 1;
    switch (words[i].kind) {
      case WordKind::Determiner:
        while (j < words.size() && words[j].kind == WordKind::Determiner) ++j;
        while (is_content(j)) ++j;
        break;
      case WordKind::Auxiliary:
        while (j < words.size() && words[j].kind == WordKind::Auxiliary) ++j;
        if (is_content(j) && !words[j].capitalized) ++j;
        break;
      case WordKind::Content:
        if (words[i].capitalized) {
          while (is_content(j) && words[j].capitalized) ++j;
        }
        break;
      default:
        break;
    }
    phrases.push_back({words[i].tokens.start, words[j - 1].tokens.end});
    i = j;
  }
  return PhraseSegmentation(std::move(phrases), gen.tokens.size());
}

PhraseSegmentation segment(const Generation& gen, std::string_view question,
                           Segmentation mode) {
  if (mode == Segmentation::Token) {
    return PhraseSegmentation::token_level(gen.tokens.size());
  }
  return segment_phrases(gen, question);
}

}  // namespace mars
