// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lingcx/nlp/tagset.hpp"

namespace lingcx::nlp {

struct TaggedToken {
  std::string surface;
  std::size_t char_length = 0;  // code points in `surface`
  std::string fine_tag;         // Penn tag
  LexClass lex_class = LexClass::other;
  bool is_word = false;  // contains a letter; punctuation and bare numbers are not words

  friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

struct Sentence {
  std::size_t index = 0;
  std::vector<TaggedToken> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

/// A segmented, tagged document: the unit every metric is computed over.
using Document = std::vector<Sentence>;

}  // namespace lingcx::nlp
