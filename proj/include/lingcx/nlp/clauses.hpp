// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

#include "lingcx/nlp/tagset.hpp"
#include "lingcx/nlp/types.hpp"

namespace lingcx::nlp {

/// Pluggable clause counter; a parser-backed implementation can replace the
/// default heuristic without touching the metrics code.
class ClauseCounter {
 public:
  virtual ~ClauseCounter() = default;
  virtual std::size_t count(const Sentence& sentence) const = 0;
};

/// Counts maximal verb chains (runs of VB*/MD, allowing interior adverbs and
/// infinitival "to") that contain a finite form (VBD, VBZ, VBP, MD). A
/// sentence with words but no finite chain counts as one clause.
class FiniteVerbChainCounter final : public ClauseCounter {
 public:
  std::size_t count(const Sentence& sentence) const override {
    const auto& toks = sentence.tokens;
    std::size_t clauses = 0;
    bool any_word = false;
    std::size_t i = 0;
    while (i < toks.size()) {
      any_word = any_word || toks[i].is_word;
      if (!is_chain_head(toks[i].fine_tag)) {
        ++i;
        continue;
      }
      bool finite = false;
      std::size_t last_verb = i;
      std::size_t j = i;
      while (j < toks.size()) {
        const std::string_view tag = toks[j].fine_tag;
        if (is_chain_head(tag)) {
          finite = finite || is_finite_tag(tag);
          last_verb = j;
        } else if (!is_chain_glue(toks[j])) {
          break;
        }
        any_word = any_word || toks[j].is_word;
        ++j;
      }
      if (finite) ++clauses;
      // glue after the last verb is not part of the chain
      i = last_verb + 1;
    }
    if (clauses == 0 && any_word) return 1;
    return clauses;
  }

 private:
  static bool is_chain_head(std::string_view tag) { return is_verb_tag(tag) || tag == "MD"; }
  static bool is_chain_glue(const TaggedToken& t) {
    return t.fine_tag == "RB" || t.fine_tag == "RBR" || t.fine_tag == "RBS" || t.fine_tag == "TO" ||
           t.surface == "to";
  }
};

inline std::size_t count_clauses(const Sentence& sentence) { return FiniteVerbChainCounter{}.count(sentence); }

}  // namespace lingcx::nlp
