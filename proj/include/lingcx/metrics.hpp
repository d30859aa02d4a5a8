// SPDX-License-Identifier: Apache-2.0
#pragma once

// The eleven per-document complexity features. Every feature counts word
// tokens only (tokens containing a letter); sentences without a word token
// are not counted as sentences.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "lingcx/error.hpp"
#include "lingcx/nlp/clauses.hpp"
#include "lingcx/nlp/types.hpp"
#include "lingcx/text.hpp"

namespace lingcx::metrics {

using nlp::Document;
using nlp::LexClass;

struct Density {
  double noun = 0, verb = 0, adj = 0, adv = 0;
  friend bool operator==(const Density&, const Density&) = default;
};

struct Sophistication {
  std::optional<double> noun, verb, adj, adv;
  friend bool operator==(const Sophistication&, const Sophistication&) = default;
};

struct FeatureVector {
  double msl = 0;
  double clause_ratio = 0;
  double ttr = 0;
  std::optional<double> noun_len, verb_len, adj_len, adv_len;
  double noun_ratio = 0, verb_ratio = 0, adj_ratio = 0, adv_ratio = 0;
  std::size_t word_token_count = 0;
  std::size_t sentence_count = 0;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// Features in the canonical reporting order.
enum class Feature {
  msl,
  clause_ratio,
  ttr,
  noun_len,
  verb_len,
  adj_len,
  adv_len,
  noun_ratio,
  verb_ratio,
  adj_ratio,
  adv_ratio
};

inline constexpr std::size_t kFeatureCount = 11;
inline constexpr std::array<Feature, kFeatureCount> kFeatures = {
    Feature::msl,      Feature::clause_ratio, Feature::ttr,        Feature::noun_len,
    Feature::verb_len, Feature::adj_len,      Feature::adv_len,    Feature::noun_ratio,
    Feature::verb_ratio, Feature::adj_ratio,  Feature::adv_ratio};

/// Column name used in exports.
inline std::string_view feature_key(Feature f) {
  static constexpr std::array<std::string_view, kFeatureCount> keys = {
      "msl",      "clause_ratio", "ttr",        "noun_len",  "verb_len", "adj_len",
      "adv_len",  "noun_ratio",   "verb_ratio", "adj_ratio", "adv_ratio"};
  return keys[static_cast<std::size_t>(f)];
}

/// Human-readable name used in reports.
inline std::string_view feature_label(Feature f) {
  static constexpr std::array<std::string_view, kFeatureCount> labels = {
      "sentence length", "clause ratio",    "TTR",         "noun length", "verb length", "adjective length",
      "adverb length",   "noun ratio",      "verb ratio",  "adjective ratio", "adverb ratio"};
  return labels[static_cast<std::size_t>(f)];
}

inline std::optional<Feature> parse_feature(std::string_view key) {
  for (const auto f : kFeatures) {
    if (feature_key(f) == key) return f;
  }
  return std::nullopt;
}

inline std::optional<double> feature_value(const FeatureVector& v, Feature f) {
  switch (f) {
    case Feature::msl: return v.msl;
    case Feature::clause_ratio: return v.clause_ratio;
    case Feature::ttr: return v.ttr;
    case Feature::noun_len: return v.noun_len;
    case Feature::verb_len: return v.verb_len;
    case Feature::adj_len: return v.adj_len;
    case Feature::adv_len: return v.adv_len;
    case Feature::noun_ratio: return v.noun_ratio;
    case Feature::verb_ratio: return v.verb_ratio;
    case Feature::adj_ratio: return v.adj_ratio;
    case Feature::adv_ratio: return v.adv_ratio;
  }
  return std::nullopt;
}

inline void set_feature_value(FeatureVector& v, Feature f, std::optional<double> x) {
  switch (f) {
    case Feature::msl: v.msl = x.value_or(0); break;
    case Feature::clause_ratio: v.clause_ratio = x.value_or(0); break;
    case Feature::ttr: v.ttr = x.value_or(0); break;
    case Feature::noun_len: v.noun_len = x; break;
    case Feature::verb_len: v.verb_len = x; break;
    case Feature::adj_len: v.adj_len = x; break;
    case Feature::adv_len: v.adv_len = x; break;
    case Feature::noun_ratio: v.noun_ratio = x.value_or(0); break;
    case Feature::verb_ratio: v.verb_ratio = x.value_or(0); break;
    case Feature::adj_ratio: v.adj_ratio = x.value_or(0); break;
    case Feature::adv_ratio: v.adv_ratio = x.value_or(0); break;
  }
}

namespace detail {

inline std::size_t words_in(const nlp::Sentence& s) {
  std::size_t n = 0;
  for (const auto& t : s.tokens) n += t.is_word ? 1 : 0;
  return n;
}

inline double ratio(std::size_t num, std::size_t den) { return static_cast<double>(num) / static_cast<double>(den); }

inline void require_words(const Document& doc) {
  for (const auto& s : doc) {
    if (words_in(s) > 0) return;
  }
  throw EmptyDocument("document has no word tokens");
}

}  // namespace detail

inline double mean_sentence_length(const Document& doc) {
  detail::require_words(doc);
  std::size_t words = 0;
  std::size_t sentences = 0;
  for (const auto& s : doc) {
    const auto w = detail::words_in(s);
    words += w;
    sentences += w > 0 ? 1 : 0;
  }
  return detail::ratio(words, sentences);
}

inline double clause_ratio(const Document& doc, const nlp::ClauseCounter& counter = nlp::FiniteVerbChainCounter{}) {
  detail::require_words(doc);
  std::size_t clauses = 0;
  std::size_t sentences = 0;
  for (const auto& s : doc) {
    if (detail::words_in(s) == 0) continue;
    clauses += counter.count(s);
    ++sentences;
  }
  return detail::ratio(clauses, sentences);
}

inline double type_token_ratio(const Document& doc) {
  detail::require_words(doc);
  std::unordered_set<std::string> types;
  std::size_t tokens = 0;
  for (const auto& s : doc) {
    for (const auto& t : s.tokens) {
      if (!t.is_word) continue;
      types.insert(text::ascii_lower(t.surface));
      ++tokens;
    }
  }
  return detail::ratio(types.size(), tokens);
}

inline Density lexical_density(const Document& doc) {
  detail::require_words(doc);
  std::array<std::size_t, 5> counts{};
  std::size_t words = 0;
  for (const auto& s : doc) {
    for (const auto& t : s.tokens) {
      if (!t.is_word) continue;
      ++counts[static_cast<std::size_t>(t.lex_class)];
      ++words;
    }
  }
  return {detail::ratio(counts[0], words), detail::ratio(counts[1], words), detail::ratio(counts[2], words),
          detail::ratio(counts[3], words)};
}

inline Sophistication lexical_sophistication(const Document& doc) {
  detail::require_words(doc);
  std::array<std::size_t, 5> counts{};
  std::array<std::size_t, 5> lengths{};
  for (const auto& s : doc) {
    for (const auto& t : s.tokens) {
      if (!t.is_word) continue;
      ++counts[static_cast<std::size_t>(t.lex_class)];
      lengths[static_cast<std::size_t>(t.lex_class)] += t.char_length;
    }
  }
  auto mean = [&](LexClass c) -> std::optional<double> {
    const auto k = static_cast<std::size_t>(c);
    if (counts[k] == 0) return std::nullopt;
    return detail::ratio(lengths[k], counts[k]);
  };
  return {mean(LexClass::noun), mean(LexClass::verb), mean(LexClass::adj), mean(LexClass::adv)};
}

/// All eleven features from a single walk over the token stream.
inline FeatureVector compute_features(const Document& doc,
                                      const nlp::ClauseCounter& counter = nlp::FiniteVerbChainCounter{}) {
  std::array<std::size_t, 5> counts{};
  std::array<std::size_t, 5> lengths{};
  std::unordered_set<std::string> types;
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t clauses = 0;
  for (const auto& s : doc) {
    std::size_t in_sentence = 0;
    for (const auto& t : s.tokens) {
      if (!t.is_word) continue;
      ++in_sentence;
      const auto k = static_cast<std::size_t>(t.lex_class);
      ++counts[k];
      lengths[k] += t.char_length;
      types.insert(text::ascii_lower(t.surface));
    }
    if (in_sentence == 0) continue;
    words += in_sentence;
    ++sentences;
    clauses += counter.count(s);
  }
  if (words == 0) throw EmptyDocument("document has no word tokens");

  auto mean = [&](LexClass c) -> std::optional<double> {
    const auto k = static_cast<std::size_t>(c);
    if (counts[k] == 0) return std::nullopt;
    return detail::ratio(lengths[k], counts[k]);
  };
  FeatureVector v;
  v.msl = detail::ratio(words, sentences);
  v.clause_ratio = detail::ratio(clauses, sentences);
  v.ttr = detail::ratio(types.size(), words);
  v.noun_len = mean(LexClass::noun);
  v.verb_len = mean(LexClass::verb);
  v.adj_len = mean(LexClass::adj);
  v.adv_len = mean(LexClass::adv);
  v.noun_ratio = detail::ratio(counts[0], words);
  v.verb_ratio = detail::ratio(counts[1], words);
  v.adj_ratio = detail::ratio(counts[2], words);
  v.adv_ratio = detail::ratio(counts[3], words);
  v.word_token_count = words;
  v.sentence_count = sentences;
  return v;
}

}  // namespace lingcx::metrics
