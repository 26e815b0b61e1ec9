#include <gtest/gtest.h>

#include "mars/importance.hpp"
#include "mars/records.hpp"
#include "test_support.hpp"

namespace mars {
namespace {

Generation tokens(std::vector<std::string> texts) {
  Generation g;
  for (auto& t : texts) {
    g.text += t;
    g.tokens.push_back({std::move(t), -0.1});
  }
  return g;
}

std::string render(const Generation& g, const PhraseSegmentation& seg) {
  std::string out;
  for (const auto& s : seg.spans()) {
    if (!out.empty()) out += ' ';
    out += '[';
    for (std::size_t i = s.start; i < s.end; ++i) out += g.tokens[i].text;
    out += ']';
  }
  return out;
}

TEST(SegmentPhrases, SingleTokenIsOnePhrase) {
  const auto seg = segment_phrases(tokens({"Mars"}), "");
  ASSERT_EQ(seg.phrase_count(), 1u);
  EXPECT_EQ(seg.spans()[0], (Span{0, 1}));
}

TEST(SegmentPhrases, DeterminerAbsorbsFollowingContentRun) {
  const auto seg = segment_phrases(
      tokens({"Mars", " is", " the", " Red", " Planet"}),
      "Which planet is known as the Red Planet?");
  const std::vector<Span> want = {{0, 1}, {1, 2}, {2, 5}};
  EXPECT_EQ(seg.spans(), want);
}

TEST(SegmentPhrases, NeverSplitsInsideAWord) {
  const auto g = tokens({"William", " Shake", "speare"});
  const auto seg = segment_phrases(g, "Who wrote Hamlet?");
  // " Shake" + "speare" is one word; capitalized run merges it with William.
  ASSERT_EQ(seg.phrase_count(), 1u);
  const auto words = segment_words(g);
  const std::vector<Span> want = {{0, 1}, {1, 3}};
  EXPECT_EQ(words.spans(), want);
}

TEST(SegmentPhrases, PunctuationSplitsFromWords) {
  const auto seg = segment_words(tokens({"Paris", ".", " It", "'s"}));
  EXPECT_EQ(seg.phrase_count(), 4u);
  EXPECT_EQ(segment_words(tokens({"19", "12"})).phrase_count(), 1u);
}

TEST(SegmentPhrases, TokenModeIsDegenerate) {
  const auto g = tokens({"The", " Red", " Planet"});
  const auto seg = segment(g, "", Segmentation::Token);
  EXPECT_EQ(seg, PhraseSegmentation::token_level(3));
}

TEST(SegmentPhrases, Deterministic) {
  const auto g = tokens({"The", " happy", " man", " has", " been", " eating"});
  EXPECT_EQ(segment_phrases(g, "q"), segment_phrases(g, "q"));
}

// Chunker output for a fixed set of answers, frozen after review.
TEST(SegmentPhrases, MatchesGoldenFile) {
  std::vector<Generation> cases = {
      tokens({"Mars"}),
      tokens({"Mars", " is", " the", " Red", " Planet"}),
      tokens({"William", " Shake", "speare"}),
      tokens({"The", " happy", " man", " has", " been", " eating", " at", " the",
              " dinner"}),
      tokens({"Hamlet", " is", " written", " by", " William", " Shakespeare", "."}),
      tokens({"It", "'s", " Paris"}),
      tokens({"1", "9", "12"}),
      tokens({"Leonardo", " da", " Vinci", " painted", " it"}),
  };
  for (const auto& rec :
       ingest_records_file(testing::data_path("fixture20.jsonl"))) {
    cases.push_back(rec.answer);
  }
  std::string got;
  for (const auto& g : cases) got += render(g, segment_phrases(g, "")) + "\n";

  const auto path = testing::data_path("golden/segmentation.txt");
  if (testing::update_golden()) testing::write_file(path, got);
  EXPECT_EQ(got, testing::read_file(path));
}

}  // namespace
}  // namespace mars
