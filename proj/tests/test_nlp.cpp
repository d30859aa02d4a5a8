#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lingcx/config.hpp"
#include "lingcx/nlp/analyze.hpp"
#include "lingcx/nlp/clauses.hpp"
#include "lingcx/nlp/segment.hpp"
#include "lingcx/nlp/tagger.hpp"
#include "lingcx/nlp/tokenize.hpp"

using namespace lingcx;
using namespace lingcx::nlp;

namespace {

std::vector<std::string> sentences_of(std::string_view text, const AbbreviationTable& t) {
  std::vector<std::string> out;
  for (const auto& s : segment_sentences(text, t)) out.emplace_back(s.in(text));
  return out;
}

Sentence hand_tagged(const std::vector<std::pair<std::string, std::string>>& pairs) {
  Sentence s;
  for (const auto& [w, t] : pairs) {
    TaggedToken tok;
    tok.surface = w;
    tok.char_length = text::code_point_count(w);
    tok.fine_tag = t;
    tok.lex_class = coarse_class(t);
    tok.is_word = is_word_token(w);
    s.tokens.push_back(tok);
  }
  return s;
}

const std::vector<TaggedSentence>& seed_corpus() {
  static const auto corpus = read_tagged_corpus(default_tagger_corpus());
  return corpus;
}

const PosModel& seed_model() {
  static const PosModel model = train_tagger(seed_corpus(), 5, 42);
  return model;
}

}  // namespace

TEST(Segment, Examples) {
  const AbbreviationTable none;
  EXPECT_EQ(sentences_of("A runs. B walks.", none), (std::vector<std::string>{"A runs.", "B walks."}));
  EXPECT_EQ(sentences_of("See Fig. 2 here.", AbbreviationTable(std::map<std::string, std::string>{{"Fig.", "Figure"}})),
            std::vector<std::string>{"See Fig. 2 here."});
  EXPECT_TRUE(segment_sentences("", none).empty());
  EXPECT_TRUE(segment_sentences("   \n", none).empty());
}

TEST(Segment, BoundaryRules) {
  const auto t = AbbreviationTable::defaults();
  EXPECT_EQ(sentences_of("It works (see below). Then it stops!  Why? no.", t),
            (std::vector<std::string>{"It works (see below).", "Then it stops!", "Why? no."}));
  EXPECT_EQ(sentences_of("Smith et al. Showed it.", t), std::vector<std::string>{"Smith et al. Showed it."});
  EXPECT_EQ(sentences_of("The value was 3.5 mm. Next", t), (std::vector<std::string>{"The value was 3.5 mm.", "Next"}));
  EXPECT_EQ(sentences_of("He said \"Stop.\" Then left.", t),
            (std::vector<std::string>{"He said \"Stop.\"", "Then left."}));
}

TEST(Segment, SpansCoverInput) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pieces = {"A", "b", ".", " ", "  ", "Fig.", "?", "\"", ")", "x.Y", "\n", "e.g."};
  const auto t = AbbreviationTable::defaults();
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    const auto n = rng() % 20;
    for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
    const auto spans = segment_sentences(s, t);
    std::size_t pos = 0;
    for (const auto& sp : spans) {
      ASSERT_LE(pos, sp.begin);
      for (std::size_t k = pos; k < sp.begin; ++k) ASSERT_TRUE(text::is_space(s[k])) << s;
      ASSERT_LT(sp.begin, sp.end);
      pos = sp.end;
    }
    for (std::size_t k = pos; k < s.size(); ++k) ASSERT_TRUE(text::is_space(s[k])) << s;
  }
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("cells grow."), (std::vector<std::string>{"cells", "grow", "."}));
  EXPECT_EQ(tokenize("don't"), (std::vector<std::string>{"do", "n't"}));
  EXPECT_EQ(tokenize("p53-mediated"), std::vector<std::string>{"p53-mediated"});
}

TEST(Tokenize, PunctuationAndProtectedForms) {
  const auto t = AbbreviationTable::defaults();
  EXPECT_EQ(tokenize("(see Fig. 2), e.g. the U.S. cell's 3.5 mm...", t),
            (std::vector<std::string>{"(", "see", "Fig.", "2", ")", ",", "e.g.", "the", "U.S.", "cell", "'s", "3.5",
                                      "mm", "..."}));
  EXPECT_EQ(tokenize("\"quoted\";"), (std::vector<std::string>{"\"", "quoted", "\"", ";"}));
  EXPECT_EQ(tokenize("it\xE2\x80\x99s"), (std::vector<std::string>{"it", "\xE2\x80\x99s"}));
  EXPECT_TRUE(tokenize("   ").empty());
}

TEST(Tokenize, TokensConcatenateToNonWhitespace) {
  std::mt19937_64 rng(9);
  const std::vector<std::string> pieces = {"a", "B", "'", "n't", "(", ")", ".", ",", "-", "3", " ", "\"", "...", "'s"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::string s;
    const auto n = rng() % 15;
    for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
    std::string expected;
    for (char c : s) {
      if (!text::is_space(c)) expected += c;
    }
    std::string joined;
    for (const auto& tok : tokenize(s)) {
      ASSERT_FALSE(tok.empty());
      joined += tok;
    }
    ASSERT_EQ(joined, expected) << s;
  }
}

TEST(CoarseClass, MappingTable) {
  EXPECT_EQ(coarse_class("NNS"), LexClass::noun);
  EXPECT_EQ(coarse_class("VBZ"), LexClass::verb);
  EXPECT_EQ(coarse_class("MD"), LexClass::other);
  EXPECT_EQ(coarse_class("WRB"), LexClass::other);
  EXPECT_EQ(coarse_class("PRP"), LexClass::other);
  EXPECT_EQ(coarse_class("JJS"), LexClass::adj);
  EXPECT_EQ(coarse_class("RBR"), LexClass::adv);
  EXPECT_EQ(coarse_class("not-a-tag"), LexClass::other);
  std::size_t nouns = 0, verbs = 0, adjs = 0, advs = 0;
  for (const auto t : kPennTags) {
    switch (coarse_class(t)) {
      case LexClass::noun: ++nouns; break;
      case LexClass::verb: ++verbs; break;
      case LexClass::adj: ++adjs; break;
      case LexClass::adv: ++advs; break;
      case LexClass::other: break;
    }
  }
  EXPECT_EQ(nouns, 4u);
  EXPECT_EQ(verbs, 6u);
  EXPECT_EQ(adjs, 3u);
  EXPECT_EQ(advs, 3u);
}

TEST(TaggedCorpus, ParseAndErrors) {
  std::stringstream ok("The\tDT\ncell\tNN\n\n\nIt\tPRP\n");
  const auto c = parse_tagged_corpus(ok);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0][1], (TaggedWord{"cell", "NN"}));
  std::stringstream bad_tag("The\tDT\ncell\tNOUN\n");
  try {
    parse_tagged_corpus(bad_tag);
    FAIL();
  } catch (const CorruptRecord& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::stringstream no_tab("The DT\n");
  EXPECT_THROW(parse_tagged_corpus(no_tab), CorruptRecord);
}

TEST(TaggedCorpus, SeedCorpusIsWellFormed) {
  const auto& c = seed_corpus();
  std::size_t tokens = 0;
  for (const auto& s : c) tokens += s.size();
  EXPECT_GE(c.size(), 400u);
  EXPECT_GE(tokens, 5000u);
  std::stringstream ss;
  write_tagged_corpus(ss, c);
  EXPECT_EQ(parse_tagged_corpus(ss), c);
}

TEST(Tagger, MemorizesOneSentence) {
  const std::vector<TaggedSentence> corpus = {
      {{"Cells", "NNS"}, {"divide", "VBP"}, {"rapidly", "RB"}, {"in", "IN"}, {"culture", "NN"}, {".", "."}}};
  const auto m = train_tagger(corpus, 5, 1);
  EXPECT_EQ(tagging_accuracy(m, corpus), 1.0);
}

TEST(Tagger, Errors) {
  EXPECT_THROW(train_tagger(std::vector<TaggedSentence>{}, 5, 1), EmptyCorpus);
  const std::vector<TaggedSentence> corpus = {{{"a", "DT"}}};
  EXPECT_THROW(train_tagger(corpus, 0, 1), MalformedInput);
}

TEST(Tagger, DeterministicAndSerializable) {
  const auto [train, test] = split_corpus(seed_corpus(), 0.1, 42);
  const auto a = train_tagger(std::span(train).first(100), 3, 7);
  const auto b = train_tagger(std::span(train).first(100), 3, 7);
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
  const auto round = PosModel::from_json(nlohmann::json::parse(a.to_json().dump()));
  EXPECT_TRUE(round == a);
  const auto path = (std::filesystem::temp_directory_path() / "lingcx_model.json").string();
  a.save(path);
  EXPECT_TRUE(PosModel::load(path) == a);
  EXPECT_THROW(PosModel::from_json(nlohmann::json{{"format", "other"}}), MalformedInput);
}

TEST(Tagger, HeldOutAccuracyOnSeedCorpus) {
  const auto [train, test] = split_corpus(seed_corpus(), 0.1, 42);
  const auto m = train_tagger(train, 5, 42);
  EXPECT_GE(tagging_accuracy(m, test), 0.90);
}

TEST(TagPos, SeedGoldExample) {
  const std::vector<std::string> toks = {"the", "cell", "divides", "."};
  const auto tagged = tag_pos(toks, seed_model());
  ASSERT_EQ(tagged.size(), 4u);
  EXPECT_EQ(tagged[0].fine_tag, "DT");
  EXPECT_EQ(tagged[1].fine_tag, "NN");
  EXPECT_EQ(tagged[2].fine_tag, "VBZ");
  EXPECT_EQ(tagged[3].fine_tag, ".");
  EXPECT_FALSE(tagged[3].is_word);
  EXPECT_TRUE(tagged[1].is_word);
  EXPECT_EQ(tagged[2].char_length, 7u);
  EXPECT_EQ(tagged[2].lex_class, LexClass::verb);
  EXPECT_TRUE(tag_pos(std::vector<std::string>{}, seed_model()).empty());
}

TEST(TagPos, ReproducesHandTagsOfGoldenDocument) {
  std::ifstream in(std::string(LINGCX_FIXTURES) + "/golden_doc.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto doc = analyze_text(ss.str(), AbbreviationTable::defaults(), seed_model());
  const auto gold = read_tagged_corpus(std::string(LINGCX_FIXTURES) + "/golden_doc.tsv");
  ASSERT_EQ(doc.size(), gold.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    EXPECT_EQ(doc[i].index, i);
    ASSERT_EQ(doc[i].tokens.size(), gold[i].size());
    for (std::size_t k = 0; k < gold[i].size(); ++k) {
      EXPECT_EQ(doc[i].tokens[k].surface, gold[i][k].surface);
      EXPECT_EQ(doc[i].tokens[k].fine_tag, gold[i][k].tag) << gold[i][k].surface;
    }
  }
}

TEST(TagPos, LengthPreservingAndDeterministic) {
  std::mt19937_64 rng(2);
  std::vector<std::string> vocab;
  for (const auto& s : seed_corpus()) {
    for (const auto& w : s) vocab.push_back(w.surface);
  }
  vocab.push_back("zyxqv");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> toks;
    const auto n = rng() % 25;
    for (std::size_t i = 0; i < n; ++i) toks.push_back(vocab[rng() % vocab.size()]);
    const auto a = tag_pos(toks, seed_model());
    ASSERT_EQ(a.size(), toks.size());
    ASSERT_EQ(a, tag_pos(toks, seed_model()));
  }
}

TEST(Clauses, Examples) {
  EXPECT_EQ(count_clauses(hand_tagged({{"The", "DT"}, {"cell", "NN"}, {"divides", "VBZ"}, {".", "."}})), 1u);
  EXPECT_EQ(count_clauses(hand_tagged({{"We", "PRP"},
                                       {"show", "VBP"},
                                       {"that", "IN"},
                                       {"the", "DT"},
                                       {"gene", "NN"},
                                       {",", ","},
                                       {"which", "WDT"},
                                       {"was", "VBD"},
                                       {"silenced", "VBN"},
                                       {",", ","},
                                       {"recovers", "VBZ"},
                                       {".", "."}})),
            3u);
  EXPECT_EQ(count_clauses(hand_tagged(
                {{"In", "IN"}, {"contrast", "NN"}, {"to", "TO"}, {"prior", "JJ"}, {"work", "NN"}, {".", "."}})),
            1u);
}

TEST(Clauses, ChainRules) {
  // modal + adverb + base verb is one chain
  EXPECT_EQ(count_clauses(hand_tagged({{"It", "PRP"}, {"will", "MD"}, {"not", "RB"}, {"grow", "VB"}})), 1u);
  // non-finite chain alone falls back to the floor
  EXPECT_EQ(count_clauses(hand_tagged({{"Having", "VBG"}, {"grown", "VBN"}})), 1u);
  // "wants to go" is one chain; "and stops" another
  EXPECT_EQ(count_clauses(hand_tagged({{"It", "PRP"},
                                       {"wants", "VBZ"},
                                       {"to", "TO"},
                                       {"go", "VB"},
                                       {"and", "CC"},
                                       {"stops", "VBZ"}})),
            2u);
  EXPECT_EQ(count_clauses(hand_tagged({{".", "."}})), 0u);
  EXPECT_EQ(count_clauses(Sentence{}), 0u);
}

TEST(Clauses, BoundsOnRandomTagSequences) {
  std::mt19937_64 rng(4);
  const std::vector<std::string> tags = {"DT", "NN", "VBZ", "VBD", "VBN", "VBG", "MD", "RB", "TO", "IN", ".", ","};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<std::pair<std::string, std::string>> pairs;
    const auto n = rng() % 12;
    std::size_t verbs = 0;
    bool has_word = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& t = tags[rng() % tags.size()];
      const bool punct = t == "." || t == ",";
      pairs.emplace_back(punct ? t : "w", t);
      has_word = has_word || !punct;
      if (is_verb_tag(t) || t == "MD") ++verbs;
    }
    const auto c = count_clauses(hand_tagged(pairs));
    if (has_word) {
      ASSERT_GE(c, 1u);
    }
    ASSERT_LE(c, verbs + 1);
  }
}

TEST(Analyze, DropsEmptySentencesAndCountsWords) {
  const auto doc = analyze_text("Cells divide. 42. They grow.", AbbreviationTable{}, seed_model());
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[1].index, 1u);
  EXPECT_EQ(doc[1].tokens[0].surface, "They");
  EXPECT_EQ(count_words("Cells divide. 42. They grow.", AbbreviationTable{}), 4u);
  EXPECT_TRUE(analyze_text("", AbbreviationTable{}, seed_model()).empty());
}
