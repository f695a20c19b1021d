#include <gtest/gtest.h>

#include "svsm/error.hpp"
#include "svsm/text.hpp"

using namespace svsm;

namespace {

std::vector<std::string> surfaces(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.normalized);
  return out;
}

}  // namespace

TEST(Tokenize, StopwordFlags) {
  const auto stop = StopwordList::parse("in\nthe\n");
  const auto tokens = tokenize_and_filter("Earthquake in the USA", stop);
  EXPECT_EQ(surfaces(tokens), (std::vector<std::string>{"earthquake", "in", "the", "usa"}));
  std::vector<bool> flags;
  for (const auto& t : tokens) flags.push_back(t.stopword);
  EXPECT_EQ(flags, (std::vector<bool>{false, true, true, false}));
  EXPECT_EQ(tokens[3].surface, "USA");
  EXPECT_EQ(tokens[3].start, 18u);
  EXPECT_EQ(tokens[3].end, 21u);
}

TEST(Tokenize, EmptyAndPunctuation) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize(" ,.;-- ").empty());
  EXPECT_EQ(surfaces(tokenize("U.S.-based")), (std::vector<std::string>{"u", "s", "based"}));
  EXPECT_EQ(surfaces(tokenize("Paris, Texas (1984)")), (std::vector<std::string>{"paris", "texas", "1984"}));
}

TEST(Tokenize, NonAsciiBytesStayInsideTokens) {
  EXPECT_EQ(surfaces(tokenize("caf\xC3\xA9 ol\xC3\xA9")), (std::vector<std::string>{"caf\xC3\xA9", "ol\xC3\xA9"}));
}

TEST(Stopwords, BuiltInList) {
  const auto& stop = StopwordList::english();
  EXPECT_GT(stop.size(), 200u);
  for (const char* w : {"the", "in", "of", "where", "who", "when", "was"}) EXPECT_TRUE(stop.contains(w)) << w;
  for (const char* w : {"earthquake", "bank", "paris", "born"}) EXPECT_FALSE(stop.contains(w)) << w;
}

TEST(Stopwords, ParseIgnoresCommentsAndCase) {
  const auto stop = StopwordList::parse("# comment\nThe\n\n  of  \n");
  EXPECT_EQ(stop.size(), 2u);
  EXPECT_TRUE(stop.contains("the"));
  EXPECT_TRUE(stop.contains("of"));
}

TEST(Text, Helpers) {
  EXPECT_EQ(normalize_phrase("  Southeast   ASIA "), "southeast asia");
  EXPECT_EQ(normalize_phrase("Paris, Texas"), "paris texas");
  EXPECT_EQ(fold_plural("clubs"), "club");
  EXPECT_EQ(fold_plural("cities"), "city");
  EXPECT_EQ(fold_plural("class"), "class");
  EXPECT_EQ(fold_plural("s"), "s");
  EXPECT_EQ(split_escaped("a\\|b|c", '|'), (std::vector<std::string>{"a|b", "c"}));
  EXPECT_EQ(trim("  x \t"), "x");
}
