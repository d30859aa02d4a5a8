#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include <json.hpp>

#include "lingcx/metrics.hpp"
#include "support/docs.hpp"

using namespace lingcx;
using namespace lingcx::metrics;
using lingcx::testing::make_token;

namespace {

nlp::Sentence sentence(std::initializer_list<std::pair<const char*, const char*>> pairs) {
  nlp::Sentence s;
  for (const auto& [w, t] : pairs) s.tokens.push_back(make_token(w, t));
  return s;
}

nlp::Sentence nouns(std::size_t n) {
  nlp::Sentence s;
  for (std::size_t i = 0; i < n; ++i) s.tokens.push_back(make_token("cell", "NN"));
  return s;
}

void expect_same(const FeatureVector& a, const FeatureVector& b) {
  for (const auto f : kFeatures) EXPECT_EQ(feature_value(a, f), feature_value(b, f)) << feature_key(f);
}

}  // namespace

TEST(MeanSentenceLength, Examples) {
  EXPECT_EQ(mean_sentence_length({nouns(4), nouns(6)}), 5.0);
  EXPECT_EQ(mean_sentence_length({sentence({{"We", "PRP"},
                                            {"show", "VBP"},
                                            {"that", "IN"},
                                            {"cells", "NNS"},
                                            {"grow", "VBP"},
                                            {"very", "RB"},
                                            {"fast", "RB"},
                                            {".", "."}})}),
            7.0);
  EXPECT_THROW(mean_sentence_length({}), EmptyDocument);
  EXPECT_THROW(mean_sentence_length({sentence({{".", "."}, {"42", "CD"}})}), EmptyDocument);
}

TEST(ClauseRatio, Examples) {
  const auto one = sentence({{"It", "PRP"}, {"grows", "VBZ"}});
  const auto two = sentence({{"It", "PRP"}, {"grows", "VBZ"}, {"and", "CC"}, {"it", "PRP"}, {"dies", "VBZ"}});
  EXPECT_EQ(clause_ratio({one, two}), 1.5);
  EXPECT_EQ(clause_ratio({one, one, one}), 1.0);
  EXPECT_THROW(clause_ratio({}), EmptyDocument);
}

TEST(TypeTokenRatio, Examples) {
  EXPECT_EQ(type_token_ratio({sentence({{"a", "DT"}, {"b", "NN"}, {"c", "NN"}})}), 1.0);
  EXPECT_EQ(type_token_ratio({sentence({{"the", "DT"}, {"cell", "NN"}, {"the", "DT"}, {"cell", "NN"}})}), 0.5);
  EXPECT_EQ(type_token_ratio({sentence({{"The", "DT"}, {"the", "DT"}, {"THE", "DT"}})}), 1.0 / 3.0);
}

TEST(LexicalDensity, Examples) {
  const auto d = lexical_density({sentence({{"cell", "NN"},
                                            {"gene", "NN"},
                                            {"DNA", "NNP"},
                                            {"cells", "NNS"},
                                            {"grow", "VBP"},
                                            {"shows", "VBZ"},
                                            {"large", "JJ"},
                                            {"the", "DT"},
                                            {"of", "IN"},
                                            {"may", "MD"}})});
  EXPECT_EQ(d, (Density{0.4, 0.2, 0.1, 0.0}));
  EXPECT_EQ(lexical_density({nouns(3)}), (Density{1.0, 0.0, 0.0, 0.0}));
}

TEST(LexicalSophistication, Examples) {
  const auto s = lexical_sophistication({sentence({{"cell", "NN"}, {"membrane", "NN"}, {"grows", "VBZ"}})});
  EXPECT_EQ(s.noun, 6.0);
  EXPECT_FALSE(s.adv.has_value());
  EXPECT_FALSE(s.adj.has_value());
  EXPECT_EQ(s.verb, 5.0);
  // code points, not bytes
  EXPECT_EQ(lexical_sophistication({sentence({{"caf\xC3\xA9", "NN"}})}).noun, 4.0);
}

TEST(ComputeFeatures, SingleSentence) {
  const auto v = compute_features({sentence({{"Cells", "NNS"}, {"divide", "VBP"}, {".", "."}})});
  EXPECT_EQ(v.msl, 2.0);
  EXPECT_EQ(v.clause_ratio, 1.0);
  EXPECT_EQ(v.ttr, 1.0);
  EXPECT_EQ(v.noun_ratio, 0.5);
  EXPECT_EQ(v.verb_ratio, 0.5);
  EXPECT_THROW(compute_features({}), EmptyDocument);
}

TEST(ComputeFeatures, GoldenDocument) {
  std::ifstream in(std::string(LINGCX_FIXTURES) + "/golden_features.json");
  const auto golden = nlohmann::json::parse(in);
  const auto v = compute_features(lingcx::testing::golden_document());
  for (const auto f : kFeatures) {
    const auto key = std::string(feature_key(f));
    const auto got = feature_value(v, f);
    if (golden.at(key).is_null()) {
      EXPECT_FALSE(got.has_value()) << key;
    } else {
      ASSERT_TRUE(got.has_value()) << key;
      EXPECT_NEAR(*got, golden.at(key).get<double>(), 1e-12) << key;
    }
  }
  EXPECT_EQ(v.word_token_count, golden.at("word_token_count").get<std::size_t>());
  EXPECT_EQ(v.sentence_count, golden.at("sentence_count").get<std::size_t>());
}

TEST(ComputeFeatures, MatchesSeparateOperationsAndNaiveOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto doc = lingcx::testing::random_document(rng);
    const auto v = compute_features(doc);
    expect_same(v, lingcx::testing::naive_features(doc));
    EXPECT_EQ(v.word_token_count, lingcx::testing::naive_features(doc).word_token_count);
    EXPECT_EQ(v.msl, mean_sentence_length(doc));
    EXPECT_EQ(v.clause_ratio, clause_ratio(doc));
    EXPECT_EQ(v.ttr, type_token_ratio(doc));
    const auto d = lexical_density(doc);
    EXPECT_EQ(v.noun_ratio, d.noun);
    EXPECT_EQ(v.adv_ratio, d.adv);
    const auto s = lexical_sophistication(doc);
    EXPECT_EQ(v.verb_len, s.verb);
    EXPECT_EQ(v.adj_len, s.adj);
  }
}

TEST(ComputeFeatures, DoublingKeepsAveragesAndHalvesTtr) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto doc = lingcx::testing::random_document(rng);
    auto twice = doc;
    twice.insert(twice.end(), doc.begin(), doc.end());
    const auto a = compute_features(doc);
    const auto b = compute_features(twice);
    for (const auto f : kFeatures) {
      if (f == Feature::ttr) continue;
      EXPECT_EQ(feature_value(a, f), feature_value(b, f)) << feature_key(f);
    }
    EXPECT_LT(b.ttr, a.ttr);
    EXPECT_EQ(b.ttr, a.ttr / 2);
  }
}

TEST(ComputeFeatures, SentenceOrderDoesNotMatter) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto doc = lingcx::testing::random_document(rng);
    const auto a = compute_features(doc);
    std::shuffle(doc.begin(), doc.end(), rng);
    expect_same(a, compute_features(doc));
  }
}

TEST(ComputeFeatures, RangesOnRandomDocuments) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = compute_features(lingcx::testing::random_document(rng));
    EXPECT_GT(v.ttr, 0.0);
    EXPECT_LE(v.ttr, 1.0);
    EXPECT_GE(v.clause_ratio, 1.0);
    EXPECT_GE(v.msl, 1.0);
    EXPECT_LE(v.noun_ratio + v.verb_ratio + v.adj_ratio + v.adv_ratio, 1.0 + 1e-12);
  }
}

TEST(FeatureNames, RoundTrip) {
  EXPECT_EQ(kFeatures.size(), 11u);
  for (const auto f : kFeatures) EXPECT_EQ(parse_feature(feature_key(f)), f);
  EXPECT_FALSE(parse_feature("nope").has_value());
  FeatureVector v;
  set_feature_value(v, Feature::adv_len, 6.5);
  EXPECT_EQ(v.adv_len, 6.5);
  set_feature_value(v, Feature::adv_len, std::nullopt);
  EXPECT_FALSE(v.adv_len.has_value());
}
