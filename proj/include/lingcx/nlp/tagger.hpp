// SPDX-License-Identifier: Apache-2.0
#pragma once

// Averaged-perceptron part-of-speech tagger.
//
// Greedy left-to-right decoding over a fixed set of feature templates:
// bias, word, lowercased word, 1-3 character suffixes, previous and next
// word, previous predicted tag, capitalisation and digit flags. Training
// shuffles sentences each epoch from a seeded Mersenne Twister with an
// explicit Fisher-Yates loop, so identical corpus + seed + epochs give
// bit-identical weights on every platform.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lingcx/error.hpp"
#include "lingcx/nlp/tagset.hpp"
#include "lingcx/nlp/tokenize.hpp"
#include "lingcx/nlp/types.hpp"
#include "lingcx/text.hpp"

namespace lingcx::nlp {

struct TaggedWord {
  std::string surface;
  std::string tag;
  friend bool operator==(const TaggedWord&, const TaggedWord&) = default;
};
using TaggedSentence = std::vector<TaggedWord>;

/// Reads the two-column corpus format: `token<TAB>tag` per line, a blank line
/// between sentences.
inline std::vector<TaggedSentence> parse_tagged_corpus(std::istream& in) {
  std::vector<TaggedSentence> corpus;
  TaggedSentence current;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      if (!current.empty()) corpus.push_back(std::move(current));
      current.clear();
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw CorruptRecord(lineno, "expected token<TAB>tag");
    }
    std::string tag = line.substr(tab + 1);
    if (!is_penn_tag(tag)) throw CorruptRecord(lineno, "'" + tag + "' is not a Penn Treebank tag");
    current.push_back({line.substr(0, tab), std::move(tag)});
  }
  if (!current.empty()) corpus.push_back(std::move(current));
  return corpus;
}

inline std::vector<TaggedSentence> read_tagged_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open tagged corpus " + path);
  return parse_tagged_corpus(in);
}

inline void write_tagged_corpus(std::ostream& out, std::span<const TaggedSentence> corpus) {
  for (const auto& s : corpus) {
    for (const auto& w : s) out << w.surface << '\t' << w.tag << '\n';
    out << '\n';
  }
}

/// Deterministic Fisher-Yates shuffle; std::shuffle's algorithm is unspecified.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

/// Shuffles sentence order with `seed` and holds out the last `heldout_fraction`.
inline std::pair<std::vector<TaggedSentence>, std::vector<TaggedSentence>> split_corpus(
    std::vector<TaggedSentence> corpus, double heldout_fraction, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  seeded_shuffle(corpus, rng);
  const auto n_test = static_cast<std::size_t>(static_cast<double>(corpus.size()) * heldout_fraction);
  std::vector<TaggedSentence> test(corpus.end() - static_cast<std::ptrdiff_t>(n_test), corpus.end());
  corpus.resize(corpus.size() - n_test);
  return {std::move(corpus), std::move(test)};
}

namespace detail {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

// Last `n` code points of `s` (or all of it).
inline std::string_view suffix_cp(std::string_view s, std::size_t n) {
  std::size_t pos = s.size();
  std::size_t seen = 0;
  while (pos > 0 && seen < n) {
    --pos;
    if ((static_cast<unsigned char>(s[pos]) & 0xC0) != 0x80) ++seen;
  }
  return s.substr(pos);
}

/// Fills `feats` (reused between calls) with the feature strings of token `i`.
inline void extract_features(std::span<const std::string> words, std::span<const std::string> lowered,
                             std::size_t i, std::string_view prev_tag, std::vector<std::string>& feats) {
  feats.resize(11);
  std::size_t k = 0;
  auto put = [&](std::string_view prefix, std::string_view value) {
    std::string& f = feats[k++];
    f.assign(prefix);
    f.append(value);
  };
  const std::string_view lw = lowered[i];
  put("bias", "");
  put("w=", words[i]);
  put("lw=", lw);
  put("s1=", suffix_cp(lw, 1));
  put("s2=", suffix_cp(lw, 2));
  put("s3=", suffix_cp(lw, 3));
  put("pw=", i > 0 ? std::string_view(lowered[i - 1]) : std::string_view("<s>"));
  put("nw=", i + 1 < words.size() ? std::string_view(lowered[i + 1]) : std::string_view("</s>"));
  put("pt=", prev_tag);
  const std::string_view w = words[i];
  put("cap=", !w.empty() && text::is_ascii_upper(w[0]) ? "1" : "0");
  put("dig=", w.find_first_of("0123456789") != std::string_view::npos ? "1" : "0");
  feats.resize(k);
}

}  // namespace detail

/// Trained tagger weights. Immutable after training; safe to share across threads.
class PosModel {
 public:
  static constexpr int kFormatVersion = 1;

  const std::vector<std::string>& tags() const noexcept { return tags_; }
  int epochs() const noexcept { return epochs_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t feature_count() const noexcept { return weights_.size(); }

  /// Predicted Penn tag per word, decoded greedily left to right.
  std::vector<std::string> predict(std::span<const std::string> words) const {
    std::vector<std::string> lowered;
    lowered.reserve(words.size());
    for (const auto& w : words) lowered.push_back(text::ascii_lower(w));
    std::vector<std::string> out;
    out.reserve(words.size());
    std::vector<std::string> feats;
    std::vector<double> scores(tags_.size());
    std::string_view prev = "<s>";
    for (std::size_t i = 0; i < words.size(); ++i) {
      detail::extract_features(words, lowered, i, prev, feats);
      std::fill(scores.begin(), scores.end(), 0.0);
      for (const auto& f : feats) {
        const auto it = weights_.find(std::string_view(f));
        if (it == weights_.end()) continue;
        for (std::size_t t = 0; t < scores.size(); ++t) scores[t] += it->second[t];
      }
      out.push_back(tags_[argmax(scores)]);
      prev = out.back();
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [feat, w] : weights_) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t] != 0.0) row.push_back({t, w[t]});
      }
      weights[feat] = std::move(row);
    }
    return {{"format", "lingcx-pos-model"},
            {"format_version", kFormatVersion},
            {"epochs", epochs_},
            {"seed", seed_},
            {"tags", tags_},
            {"weights", std::move(weights)}};
  }

  static PosModel from_json(const nlohmann::json& j) {
    try {
      if (j.at("format").get<std::string>() != "lingcx-pos-model") throw MalformedInput("not a POS model file");
      if (j.at("format_version").get<int>() != kFormatVersion) {
        throw MalformedInput("unsupported POS model format_version " + j.at("format_version").dump());
      }
      PosModel m;
      m.epochs_ = j.at("epochs").get<int>();
      m.seed_ = j.at("seed").get<std::uint64_t>();
      m.tags_ = j.at("tags").get<std::vector<std::string>>();
      for (const auto& [feat, row] : j.at("weights").items()) {
        std::vector<double> w(m.tags_.size(), 0.0);
        for (const auto& cell : row) {
          const auto t = cell.at(0).get<std::size_t>();
          if (t >= w.size()) throw MalformedInput("tag index out of range in POS model");
          w[t] = cell.at(1).get<double>();
        }
        m.weights_.emplace(feat, std::move(w));
      }
      return m;
    } catch (const nlohmann::json::exception& e) {
      throw MalformedInput(std::string("bad POS model: ") + e.what());
    }
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write POS model " + path);
    out << to_json().dump() << '\n';
    if (!out) throw IoFailure("write failed for " + path);
  }

  static PosModel load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open POS model " + path);
    try {
      return from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedInput(std::string("bad POS model: ") + e.what());
    }
  }

  friend bool operator==(const PosModel& a, const PosModel& b) {
    return a.tags_ == b.tags_ && a.epochs_ == b.epochs_ && a.seed_ == b.seed_ && a.weights_ == b.weights_;
  }

 private:
  friend PosModel train_tagger(std::span<const TaggedSentence>, int, std::uint64_t);

  static std::size_t argmax(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < scores.size(); ++t) {
      if (scores[t] > scores[best]) best = t;
    }
    return best;
  }

  std::vector<std::string> tags_;
  std::unordered_map<std::string, std::vector<double>, detail::StringHash, std::equal_to<>> weights_;
  int epochs_ = 0;
  std::uint64_t seed_ = 0;
};

/// Trains a tagger on gold-tagged sentences. Throws EmptyCorpus when there is
/// nothing to learn from and MalformedInput for tags outside the Penn set or
/// fewer than one epoch.
inline PosModel train_tagger(std::span<const TaggedSentence> corpus, int epochs, std::uint64_t seed) {
  if (epochs < 1) throw MalformedInput("tagger epochs must be at least 1");
  std::vector<const TaggedSentence*> order;
  std::vector<std::string> tags;
  for (const auto& s : corpus) {
    if (s.empty()) continue;
    order.push_back(&s);
    for (const auto& w : s) {
      if (!is_penn_tag(w.tag)) throw MalformedInput("'" + w.tag + "' is not a Penn Treebank tag");
      tags.push_back(w.tag);
    }
  }
  if (order.empty()) throw EmptyCorpus("tagger training corpus has no tokens");
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());

  std::unordered_map<std::string, std::size_t, detail::StringHash, std::equal_to<>> tag_index;
  for (std::size_t t = 0; t < tags.size(); ++t) tag_index.emplace(tags[t], t);
  const std::size_t n_tags = tags.size();

  struct Param {
    std::vector<double> weight, total;
    std::vector<std::int64_t> stamp;
  };
  std::unordered_map<std::string, Param, detail::StringHash, std::equal_to<>> params;
  std::int64_t clock = 0;

  auto update = [&](const std::string& feat, std::size_t tag, double delta) {
    auto it = params.find(std::string_view(feat));
    if (it == params.end()) {
      it = params.emplace(feat, Param{std::vector<double>(n_tags, 0.0), std::vector<double>(n_tags, 0.0),
                                      std::vector<std::int64_t>(n_tags, 0)})
               .first;
    }
    Param& p = it->second;
    p.total[tag] += static_cast<double>(clock - p.stamp[tag]) * p.weight[tag];
    p.stamp[tag] = clock;
    p.weight[tag] += delta;
  };

  std::mt19937_64 rng(seed);
  std::vector<std::string> words, lowered, feats;
  std::vector<double> scores(n_tags);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    seeded_shuffle(order, rng);
    for (const TaggedSentence* sentence : order) {
      words.clear();
      lowered.clear();
      for (const auto& w : *sentence) {
        words.push_back(w.surface);
        lowered.push_back(text::ascii_lower(w.surface));
      }
      std::string prev = "<s>";
      for (std::size_t i = 0; i < words.size(); ++i) {
        detail::extract_features(words, lowered, i, prev, feats);
        std::fill(scores.begin(), scores.end(), 0.0);
        for (const auto& f : feats) {
          const auto it = params.find(std::string_view(f));
          if (it == params.end()) continue;
          for (std::size_t t = 0; t < n_tags; ++t) scores[t] += it->second.weight[t];
        }
        const std::size_t guess = PosModel::argmax(scores);
        const std::size_t truth = tag_index.at((*sentence)[i].tag);
        ++clock;
        if (guess != truth) {
          for (const auto& f : feats) {
            update(f, truth, 1.0);
            update(f, guess, -1.0);
          }
        }
        prev = tags[guess];
      }
    }
  }

  PosModel model;
  model.tags_ = tags;
  model.epochs_ = epochs;
  model.seed_ = seed;
  const double denom = clock > 0 ? static_cast<double>(clock) : 1.0;
  for (auto& [feat, p] : params) {
    std::vector<double> avg(n_tags, 0.0);
    bool any = false;
    for (std::size_t t = 0; t < n_tags; ++t) {
      const double total = p.total[t] + static_cast<double>(clock - p.stamp[t]) * p.weight[t];
      avg[t] = total / denom;
      any = any || avg[t] != 0.0;
    }
    if (any) model.weights_.emplace(feat, std::move(avg));
  }
  return model;
}

/// Tags a token sequence and fills in the derived token attributes.
inline std::vector<TaggedToken> tag_pos(std::span<const std::string> tokens, const PosModel& model) {
  const auto tags = model.predict(tokens);
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    TaggedToken t;
    t.surface = tokens[i];
    t.char_length = text::code_point_count(tokens[i]);
    t.fine_tag = tags[i];
    t.lex_class = coarse_class(t.fine_tag);
    t.is_word = is_word_token(tokens[i]);
    out.push_back(std::move(t));
  }
  return out;
}

/// Token-level accuracy of `model` against gold tags.
inline double tagging_accuracy(const PosModel& model, std::span<const TaggedSentence> gold) {
  std::size_t correct = 0;
  std::size_t total = 0;
  std::vector<std::string> words;
  for (const auto& s : gold) {
    words.clear();
    for (const auto& w : s) words.push_back(w.surface);
    const auto pred = model.predict(words);
    for (std::size_t i = 0; i < s.size(); ++i) correct += pred[i] == s[i].tag ? 1 : 0;
    total += s.size();
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace lingcx::nlp
