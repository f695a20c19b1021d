#include <gtest/gtest.h>

#include <set>

#include "svsm/error.hpp"
#include "svsm/terms.hpp"

using namespace svsm;

TEST(Triple, Encoding) {
  EXPECT_EQ(entity_triple("Bombay", std::nullopt, std::nullopt).encode(), "ne:bombay|*|*");
  EXPECT_EQ(entity_triple(std::nullopt, std::nullopt, "e:ParisTX").encode(), "ne:*|*|e:paristx");
  EXPECT_EQ(sense_triple("temblor", "s:natural_calamity", std::nullopt).encode(), "wn:temblor|s:natural_calamity|*");
  EXPECT_EQ(encode(Keyword{"earthquak"}), "kw:earthquak");
  EXPECT_THROW(entity_triple(std::nullopt, std::nullopt, std::nullopt).encode(), PreconditionError);
}

TEST(Triple, EncodingIsInjectiveOnAwkwardFields) {
  const std::vector<Triple> triples{
      entity_triple("a|b", "c", std::nullopt), entity_triple("a", "b|c", std::nullopt),
      entity_triple("*", std::nullopt, "x"),   entity_triple(std::nullopt, std::nullopt, "x"),
      entity_triple("a\\", "b", std::nullopt), entity_triple("a", "\\b", std::nullopt),
      sense_triple("a|b", "c", std::nullopt),
  };
  std::set<std::string> keys;
  for (const auto& t : triples) keys.insert(t.encode());
  EXPECT_EQ(keys.size(), triples.size());
}

TEST(TermBag, AddSumsAndMergeMaxKeepsLargest) {
  TermBag bag;
  bag.add(Keyword{"rain"});
  bag.add(Keyword{"rain"}, 2.0);
  EXPECT_DOUBLE_EQ(bag.weight("kw:rain"), 3.0);
  bag.merge_max("kw:rain", 1.0);
  EXPECT_DOUBLE_EQ(bag.weight("kw:rain"), 3.0);
  bag.merge_max("kw:snow", 0.5);
  EXPECT_DOUBLE_EQ(bag.weight("kw:snow"), 0.5);
  EXPECT_DOUBLE_EQ(bag.weight("kw:hail"), 0.0);
  EXPECT_EQ(bag.size(), 2u);
  EXPECT_THROW(bag.add(Keyword{"x"}, 0.0), PreconditionError);
  EXPECT_THROW(bag.add(Keyword{"x"}, -1.0), PreconditionError);
}
