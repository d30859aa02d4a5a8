// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "lingcx/abbreviations.hpp"
#include "lingcx/text.hpp"

namespace lingcx::nlp {

namespace detail {

inline constexpr std::array<std::string_view, 10> kOpeners = {"(", "[", "{", "\"", "'", "`",
                                                              "\xE2\x80\x9C", "\xE2\x80\x98", "<", "\xC2\xAB"};
inline constexpr std::array<std::string_view, 14> kClosers = {")", "]", "}", "\"", "'", ",", ";", ":",
                                                              "!", "?", "\xE2\x80\x9D", "\xE2\x80\x99", ">",
                                                              "\xC2\xBB"};
inline constexpr std::array<std::string_view, 7> kClitics = {"'s", "'re", "'ve", "'ll", "'d", "'m", "n't"};

inline bool ends_with_ci(std::string_view s, std::string_view suffix) {
  if (suffix.size() > s.size()) return false;
  const std::string_view tail = s.substr(s.size() - suffix.size());
  for (std::size_t k = 0; k < suffix.size(); ++k) {
    char a = tail[k];
    if (a >= 'A' && a <= 'Z') a = static_cast<char>(a - 'A' + 'a');
    if (a != suffix[k]) return false;
  }
  return true;
}

// "U.S." style initialisms keep their final period.
inline bool is_initialism(std::string_view s) {
  if (s.size() < 4 || s.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < s.size(); k += 2) {
    const char c = s[k];
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) || s[k + 1] != '.') return false;
  }
  return true;
}

inline void split_chunk(std::string_view chunk, const AbbreviationTable& protect, std::vector<std::string>& out) {
  std::vector<std::string> tail;  // collected in reverse

  bool peeled = true;
  while (peeled && !chunk.empty()) {
    peeled = false;
    for (const auto o : kOpeners) {
      if (chunk.size() > o.size() && chunk.substr(0, o.size()) == o) {
        // keep a bare clitic ("'s") intact
        bool clitic = false;
        for (const auto c : kClitics) clitic = clitic || chunk == c;
        if (clitic) break;
        out.emplace_back(o);
        chunk.remove_prefix(o.size());
        peeled = true;
        break;
      }
    }
  }

  peeled = true;
  while (peeled && !chunk.empty()) {
    peeled = false;
    if (chunk.size() >= 4 && chunk.substr(chunk.size() - 3) == "...") {
      tail.emplace_back("...");
      chunk.remove_suffix(3);
      peeled = true;
      continue;
    }
    if (chunk.size() > 1 && chunk.back() == '.') {
      if (protect.contains(chunk) || is_initialism(chunk)) break;
      tail.emplace_back(".");
      chunk.remove_suffix(1);
      peeled = true;
      continue;
    }
    for (const auto c : kClosers) {
      if (chunk.size() > c.size() && chunk.substr(chunk.size() - c.size()) == c) {
        tail.emplace_back(c);
        chunk.remove_suffix(c.size());
        peeled = true;
        break;
      }
    }
  }

  if (!chunk.empty()) {
    std::string_view clitic;
    for (const auto c : kClitics) {
      if (chunk.size() > c.size() && ends_with_ci(chunk, c)) {
        clitic = chunk.substr(chunk.size() - c.size());
        break;
      }
    }
    if (clitic.empty()) {
      // curly apostrophe variants: ’s ’re ’ve ’ll ’d ’m
      for (const auto c : {std::string_view("\xE2\x80\x99s"), std::string_view("\xE2\x80\x99re"),
                           std::string_view("\xE2\x80\x99ve"), std::string_view("\xE2\x80\x99ll"),
                           std::string_view("\xE2\x80\x99" "d"), std::string_view("\xE2\x80\x99m"),
                           std::string_view("n\xE2\x80\x99t")}) {
        if (chunk.size() > c.size() && ends_with_ci(chunk, c)) {
          clitic = chunk.substr(chunk.size() - c.size());
          break;
        }
      }
    }
    if (!clitic.empty()) {
      out.emplace_back(chunk.substr(0, chunk.size() - clitic.size()));
      out.emplace_back(clitic);
    } else {
      out.emplace_back(chunk);
    }
  }
  out.insert(out.end(), tail.rbegin(), tail.rend());
}

}  // namespace detail

/// Whitespace split, then leading/trailing punctuation is peeled into its own
/// tokens and clitics are separated ("don't" -> "do" "n't"). Hyphenated
/// compounds, decimals and protected abbreviations stay whole. The tokens of
/// each whitespace chunk concatenate back to that chunk.
inline std::vector<std::string> tokenize(std::string_view sentence, const AbbreviationTable& protect) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && text::is_space(sentence[i])) ++i;
    const std::size_t start = i;
    while (i < sentence.size() && !text::is_space(sentence[i])) ++i;
    if (i > start) detail::split_chunk(sentence.substr(start, i - start), protect, out);
  }
  return out;
}

inline std::vector<std::string> tokenize(std::string_view sentence) {
  return tokenize(sentence, AbbreviationTable{});
}

/// A token is a word when it contains at least one letter.
inline bool is_word_token(std::string_view surface) { return text::contains_letter(surface); }

}  // namespace lingcx::nlp
