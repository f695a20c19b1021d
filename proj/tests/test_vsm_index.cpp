#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "svsm/error.hpp"
#include "svsm/vsm_index.hpp"

using namespace svsm;

namespace {

TermBag bag(std::initializer_list<std::pair<const char*, double>> terms) {
  TermBag b;
  for (const auto& [k, w] : terms) b.add_encoded(k, w);
  return b;
}

std::vector<std::string> doc_order(const std::vector<RankedResult>& results) {
  std::vector<std::string> out;
  for (const auto& r : results) out.push_back(r.doc_id);
  return out;
}

Index three_docs() {
  return Index::build({{"d3", bag({{"kw:rain", 1}, {"kw:storm", 2}})},
                       {"d1", bag({{"kw:rain", 1}, {"ne:*|*|e:bombay", 1}})},
                       {"d2", bag({{"kw:sun", 3}, {"ne:*|city|*", 1}, {"wn:*|*|s:flood", 1}})}},
                      {{"model", "semantic"}});
}

}  // namespace

TEST(TermWeight, Formula) {
  EXPECT_NEAR(term_weight(1, 10, 10), 0.6931, 1e-4);
  EXPECT_DOUBLE_EQ(term_weight(1, 1, 1), std::log(2.0));
  EXPECT_NEAR(term_weight(3, 1, 9), 4.8322, 1e-4);
  EXPECT_DOUBLE_EQ(term_weight(3, 1, 9), (1 + std::log(3.0)) * std::log(10.0));
  EXPECT_THROW(term_weight(0, 1, 1), PreconditionError);
  EXPECT_THROW(term_weight(1, 0, 1), PreconditionError);
  EXPECT_THROW(term_weight(1, 2, 1), PreconditionError);
}

TEST(IndexBuild, DocumentFrequenciesAndWeights) {
  const auto idx = Index::build({{"a", bag({{"kw:x", 3}, {"kw:y", 1}})}, {"b", bag({{"kw:y", 1}, {"kw:z", 1}})}});
  EXPECT_EQ(idx.document_count(), 2u);
  EXPECT_EQ(idx.vocabulary_size(), 3u);
  EXPECT_EQ(idx.document_frequency(*idx.term_id("kw:y")), 2u);
  EXPECT_EQ(idx.document_frequency(*idx.term_id("kw:x")), 1u);
  EXPECT_EQ(idx.document_frequency(*idx.term_id("kw:z")), 1u);
  const auto& px = idx.postings(*idx.term_id("kw:x"));
  ASSERT_EQ(px.size(), 1u);
  EXPECT_DOUBLE_EQ(px[0].weight, (1 + std::log(3.0)) * std::log(1.0 + 2.0 / 1.0));
  EXPECT_FALSE(idx.term_id("kw:w").has_value());
}

TEST(IndexBuild, RejectsBadCorpora) {
  EXPECT_THROW(Index::build({}), PreconditionError);
  EXPECT_THROW(Index::build({{"a", bag({{"kw:x", 1}})}, {"a", bag({{"kw:y", 1}})}}), PreconditionError);
}

TEST(IndexBuild, Stats) {
  const auto s = three_docs().stats();
  EXPECT_EQ(s.documents, 3u);
  EXPECT_EQ(s.vocabulary, 6u);
  EXPECT_EQ(s.keyword_terms, 3u);
  EXPECT_EQ(s.entity_terms, 2u);
  EXPECT_EQ(s.sense_terms, 1u);
}

TEST(Search, IdenticalBagScoresOne) {
  const auto doc = bag({{"kw:a", 1}, {"kw:b", 1}, {"ne:*|*|e:x", 1}});
  const auto idx = Index::build({{"only", doc}});
  const auto r = idx.search(doc, 10);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].doc_id, "only");
  EXPECT_NEAR(r[0].score, 1.0, 1e-9);
  EXPECT_EQ(r[0].rank, 1u);
}

TEST(Search, OutOfVocabularyGivesNothing) {
  EXPECT_TRUE(three_docs().search(bag({{"kw:nothing", 1}}), 10).empty());
}

TEST(Search, HandComputedTwoDocRanking) {
  const auto idx = Index::build({{"A", bag({{"kw:x", 1}, {"kw:s", 1}})}, {"B", bag({{"kw:y", 1}, {"kw:s", 1}})}});
  EXPECT_EQ(doc_order(idx.search(bag({{"kw:x", 1}}), 10)), (std::vector<std::string>{"A"}));
  const auto r = idx.search(bag({{"kw:x", 1}, {"kw:s", 1}}), 10);
  ASSERT_EQ(doc_order(r), (std::vector<std::string>{"A", "B"}));
  // x: idf ln3, s: idf ln2. A = (ln3, ln2), B = (ln2 on s, ln3 on y), query = (ln3, ln2).
  const double l2 = std::log(2.0), l3 = std::log(3.0);
  EXPECT_NEAR(r[0].score, 1.0, 1e-12);
  EXPECT_NEAR(r[1].score, (l2 * l2) / (l2 * l2 + l3 * l3), 1e-12);
}

TEST(Search, TopKAndTies) {
  const auto idx = Index::build({{"c", bag({{"kw:x", 1}})}, {"a", bag({{"kw:x", 1}})}, {"b", bag({{"kw:x", 1}})}});
  EXPECT_EQ(doc_order(idx.search(bag({{"kw:x", 1}}), 10)), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(doc_order(idx.search(bag({{"kw:x", 1}}), 2)), (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(idx.search(bag({{"kw:x", 1}}), 0), PreconditionError);
}

TEST(Search, MatchesDenseCosineOracle) {
  std::mt19937 rng(3);
  for (int round = 0; round < 20; ++round) {
    const int n_docs = 10 + static_cast<int>(rng() % 20);
    const int vocab = 15;
    Eigen::MatrixXd tf = Eigen::MatrixXd::Zero(n_docs, vocab);
    std::vector<std::pair<std::string, TermBag>> docs;
    for (int d = 0; d < n_docs; ++d) {
      TermBag b;
      for (int t = 0; t < vocab; ++t)
        if (rng() % 4 == 0) {
          tf(d, t) = 1 + static_cast<int>(rng() % 4);
          b.add_encoded("kw:t" + std::to_string(100 + t), tf(d, t));
        }
      if (b.empty()) {
        tf(d, 0) = 1;
        b.add_encoded("kw:t100", 1);
      }
      docs.emplace_back("d" + std::to_string(100 + d), std::move(b));
    }
    const auto idx = Index::build(docs);

    Eigen::VectorXd idf(vocab);
    for (int t = 0; t < vocab; ++t) {
      const double df = (tf.col(t).array() > 0).count();
      idf(t) = df > 0 ? std::log(1.0 + n_docs / df) : 0.0;
    }
    Eigen::MatrixXd w = (tf.array() > 0).select((1.0 + tf.array().max(1.0).log()).matrix() * idf.asDiagonal(), 0.0);

    TermBag q;
    Eigen::VectorXd qv = Eigen::VectorXd::Zero(vocab);
    for (int t = 0; t < vocab; ++t)
      if (rng() % 3 == 0) {
        const double x = 1 + static_cast<int>(rng() % 3);
        q.add_encoded("kw:t" + std::to_string(100 + t), x);
        qv(t) = x * idf(t);
      }
    if (qv.isZero()) continue;
    const Eigen::VectorXd cos = (w * qv).array() / (w.rowwise().norm().array() * qv.norm());

    std::vector<std::pair<double, int>> expected;
    for (int d = 0; d < n_docs; ++d)
      if (cos(d) > 0) expected.emplace_back(-cos(d), d);
    std::sort(expected.begin(), expected.end());
    const auto got = idx.search(q, static_cast<std::size_t>(n_docs));
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i].score, -expected[i].first, 1e-12);
      if (i + 1 < got.size() && std::abs(expected[i].first - expected[i + 1].first) > 1e-12)
        EXPECT_EQ(got[i].doc_id, docs[static_cast<std::size_t>(expected[i].second)].first);
    }
  }
}

TEST(Persistence, RoundTripKeepsRankingsAndMetadata) {
  const auto idx = three_docs();
  std::stringstream buf;
  idx.write(buf);
  const auto back = Index::read(buf);
  EXPECT_EQ(back.doc_ids(), idx.doc_ids());
  EXPECT_EQ(back.terms(), idx.terms());
  EXPECT_EQ(back.metadata(), idx.metadata());
  const auto q = bag({{"kw:rain", 1}, {"ne:*|city|*", 2}});
  const auto a = idx.search(q, 10), b = back.search(q, 10);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].doc_id, b[i].doc_id);
    EXPECT_EQ(a[i].score, b[i].score);
  }

  const auto path = std::filesystem::temp_directory_path() / "svsm_roundtrip.idx";
  idx.save(path);
  EXPECT_EQ(Index::load(path).doc_ids(), idx.doc_ids());
  std::filesystem::remove(path);
}

TEST(Persistence, DetectsDamage) {
  std::stringstream buf;
  three_docs().write(buf);
  const std::string bytes = buf.str();

  for (std::size_t cut : {std::size_t{2}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    std::stringstream truncated(bytes.substr(0, cut));
    EXPECT_THROW(Index::read(truncated), FormatError) << cut;
  }
  {
    std::stringstream truncated(bytes.substr(0, bytes.size() / 2));
    EXPECT_THROW(Index::read(truncated), CorruptFileError);
  }

  auto flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x40;
  std::stringstream corrupt(flipped);
  EXPECT_THROW(Index::read(corrupt), CorruptFileError);

  auto versioned = bytes;
  versioned[4] = 9;  // version field follows the 4-byte magic
  std::stringstream future(versioned);
  EXPECT_THROW(Index::read(future), VersionError);

  std::stringstream junk("not an index at all");
  EXPECT_THROW(Index::read(junk), FormatError);
}
