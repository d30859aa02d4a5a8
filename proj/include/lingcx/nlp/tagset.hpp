// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <string_view>

namespace lingcx::nlp {

/// The 45 Penn Treebank part-of-speech tags.
inline constexpr std::array<std::string_view, 45> kPennTags = {
    "#",   "$",   "''",  ",",   "-LRB-", "-RRB-", ".",   ":",    "CC",  "CD",  "DT",  "EX",
    "FW",  "IN",  "JJ",  "JJR", "JJS",   "LS",    "MD",  "NN",   "NNP", "NNPS", "NNS", "PDT",
    "POS", "PRP", "PRP$", "RB", "RBR",   "RBS",   "RP",  "SYM",  "TO",  "UH",  "VB",  "VBD",
    "VBG", "VBN", "VBP", "VBZ", "WDT",   "WP",    "WP$", "WRB",  "``"};

inline bool is_penn_tag(std::string_view tag) {
  return std::find(kPennTags.begin(), kPennTags.end(), tag) != kPennTags.end();
}

/// Coarse lexical classes used by the density and sophistication measures.
enum class LexClass { noun, verb, adj, adv, other };

inline std::string_view to_string(LexClass c) {
  switch (c) {
    case LexClass::noun: return "NOUN";
    case LexClass::verb: return "VERB";
    case LexClass::adj: return "ADJ";
    case LexClass::adv: return "ADV";
    case LexClass::other: return "OTHER";
  }
  return "OTHER";
}

/// Penn tag -> lexical class. Modals, wh-adverbs, pronouns and unknown tags are OTHER.
inline LexClass coarse_class(std::string_view tag) {
  if (tag == "NN" || tag == "NNS" || tag == "NNP" || tag == "NNPS") return LexClass::noun;
  if (tag == "VB" || tag == "VBD" || tag == "VBG" || tag == "VBN" || tag == "VBP" || tag == "VBZ") {
    return LexClass::verb;
  }
  if (tag == "JJ" || tag == "JJR" || tag == "JJS") return LexClass::adj;
  if (tag == "RB" || tag == "RBR" || tag == "RBS") return LexClass::adv;
  return LexClass::other;
}

inline bool is_verb_tag(std::string_view tag) { return tag.size() >= 2 && tag.substr(0, 2) == "VB"; }
inline bool is_finite_tag(std::string_view tag) {
  return tag == "VBD" || tag == "VBZ" || tag == "VBP" || tag == "MD";
}

}  // namespace lingcx::nlp
