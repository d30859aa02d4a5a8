// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "lingcx/abbreviations.hpp"
#include "lingcx/text.hpp"

namespace lingcx::nlp {

/// Byte range [begin, end) of one sentence inside the source text. Sentences
/// never start or end with whitespace; the gaps between spans are whitespace.
struct SentenceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::string_view in(std::string_view text) const { return text.substr(begin, end - begin); }
  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

namespace detail {

inline bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }
inline bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; }
inline bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '[' || c == '{'; }

// True when the whitespace-delimited chunk ending at `dot` (inclusive) ends
// with a protected abbreviation, e.g. "Fig." or "(cf.".
inline bool ends_with_protected(std::string_view text, std::size_t dot, const AbbreviationTable& table) {
  std::size_t start = dot;
  while (start > 0 && !text::is_space(text[start - 1])) --start;
  const std::string_view chunk = text.substr(start, dot + 1 - start);
  for (const auto& key : table.keys_longest_first()) {
    if (key.size() > chunk.size() || key.back() != '.') continue;
    if (chunk.substr(chunk.size() - key.size()) != key) continue;
    const std::size_t before = chunk.size() - key.size();
    if (before == 0 || !text::is_word_byte(chunk[before - 1])) return true;
  }
  // Multi-word keys such as "et al." span whitespace; compare against the raw text.
  for (const auto& key : table.keys_longest_first()) {
    if (key.find(' ') == std::string::npos || key.size() > dot + 1) continue;
    const std::size_t kstart = dot + 1 - key.size();
    if (text.substr(kstart, key.size()) != key) continue;
    if (kstart == 0 || !text::is_word_byte(text[kstart - 1])) return true;
  }
  return false;
}

}  // namespace detail

/// Splits text at '.', '!' or '?' (plus any closing quotes/brackets) that is
/// followed by whitespace and an upper-case letter, or by end of text. A
/// period that closes a protected abbreviation never ends a sentence.
inline std::vector<SentenceSpan> segment_sentences(std::string_view input, const AbbreviationTable& protect) {
  std::vector<SentenceSpan> spans;
  const std::size_t n = input.size();
  std::size_t start = 0;
  while (start < n && text::is_space(input[start])) ++start;

  auto emit = [&](std::size_t end) {
    std::size_t e = end;
    while (e > start && text::is_space(input[e - 1])) --e;
    if (e > start) spans.push_back({start, e});
    start = end;
    while (start < n && text::is_space(input[start])) ++start;
  };

  std::size_t i = start;
  while (i < n) {
    if (!detail::is_terminator(input[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && detail::is_terminator(input[j])) ++j;
    const std::size_t last_term = j - 1;
    while (j < n && detail::is_closer(input[j])) ++j;

    bool boundary = false;
    if (j >= n) {
      boundary = true;
    } else if (text::is_space(input[j])) {
      std::size_t k = j;
      while (k < n && text::is_space(input[k])) ++k;
      if (k >= n) {
        boundary = true;
      } else {
        while (k < n && detail::is_opener(input[k])) ++k;
        boundary = k < n && text::is_ascii_upper(input[k]);
      }
    }
    if (boundary && last_term == i && input[i] == '.' && detail::ends_with_protected(input, i, protect)) {
      boundary = false;
    }
    if (boundary) {
      emit(j);
      i = start;
    } else {
      i = j;
    }
  }
  if (start < n) emit(n);
  return spans;
}

}  // namespace lingcx::nlp
