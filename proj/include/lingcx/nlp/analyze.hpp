// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lingcx/abbreviations.hpp"
#include "lingcx/nlp/segment.hpp"
#include "lingcx/nlp/tagger.hpp"
#include "lingcx/nlp/tokenize.hpp"
#include "lingcx/nlp/types.hpp"

namespace lingcx::nlp {

/// Segments, tokenizes and tags normalized text. Sentences that tokenize to
/// nothing are dropped; indices are consecutive.
inline Document analyze_text(std::string_view text, const AbbreviationTable& protect, const PosModel& model) {
  Document doc;
  for (const auto& span : segment_sentences(text, protect)) {
    const auto tokens = tokenize(span.in(text), protect);
    if (tokens.empty()) continue;
    Sentence s;
    s.index = doc.size();
    s.tokens = tag_pos(tokens, model);
    doc.push_back(std::move(s));
  }
  return doc;
}

/// Word-token count of text without tagging.
inline std::size_t count_words(std::string_view text, const AbbreviationTable& protect) {
  std::size_t n = 0;
  for (const auto& span : segment_sentences(text, protect)) {
    for (const auto& tok : tokenize(span.in(text), protect)) n += is_word_token(tok) ? 1 : 0;
  }
  return n;
}

}  // namespace lingcx::nlp
