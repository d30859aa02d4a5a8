// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingcx/error.hpp"
#include "lingcx/text.hpp"

namespace lingcx {

/// Abbreviation -> expansion. Keys are matched case-sensitively at word
/// boundaries; they also serve as the protected set for sentence splitting.
class AbbreviationTable {
 public:
  AbbreviationTable() = default;

  explicit AbbreviationTable(std::map<std::string, std::string> entries) {
    for (auto& [k, v] : entries) add(k, v);
  }

  /// "et al." plus the common Latin and figure abbreviations of scientific prose.
  static AbbreviationTable defaults() {
    return AbbreviationTable({{"et al.", "and others"},
                              {"e.g.", "for example"},
                              {"i.e.", "that is"},
                              {"vs.", "versus"},
                              {"Fig.", "Figure"},
                              {"cf.", "compare"}});
  }

  /// Reads `abbreviation<TAB>expansion` lines; '#' starts a comment line.
  static AbbreviationTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open abbreviation table " + path);
    AbbreviationTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos) throw CorruptRecord(lineno, "abbreviation line needs a TAB");
      try {
        table.add(line.substr(0, tab), line.substr(tab + 1));
      } catch (const std::invalid_argument& e) {
        throw CorruptRecord(lineno, e.what());
      }
    }
    return table;
  }

  void add(std::string abbreviation, std::string expansion) {
    if (abbreviation.empty()) throw std::invalid_argument("empty abbreviation key");
    if (expansion.empty()) throw std::invalid_argument("empty expansion for '" + abbreviation + "'");
    entries_[std::move(abbreviation)] = std::move(expansion);
    rebuild_order();
  }

  bool empty() const noexcept { return entries_.empty(); }
  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }
  bool contains(std::string_view key) const { return entries_.find(std::string(key)) != entries_.end(); }

  /// Keys ordered longest first, so the longest match wins at a position.
  const std::vector<std::string>& keys_longest_first() const noexcept { return order_; }

 private:
  void rebuild_order() {
    order_.clear();
    for (const auto& kv : entries_) order_.push_back(kv.first);
    std::stable_sort(order_.begin(), order_.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  }

  std::map<std::string, std::string> entries_;
  std::vector<std::string> order_;
};

/// Replaces every table key occurring at a word boundary by its expansion in
/// a single left-to-right pass; the rest of the text is copied unchanged.
inline std::string normalize_abbreviations(std::string_view input, const AbbreviationTable& table) {
  if (table.empty()) return std::string(input);
  std::string out;
  out.reserve(input.size() + input.size() / 8);
  std::size_t i = 0;
  while (i < input.size()) {
    const bool left_ok = i == 0 || !text::is_word_byte(input[i - 1]);
    bool replaced = false;
    if (left_ok) {
      for (const auto& key : table.keys_longest_first()) {
        if (input.compare(i, key.size(), key) != 0) continue;
        const std::size_t end = i + key.size();
        const bool right_ok = !text::is_word_byte(key.back()) || end == input.size() ||
                              !text::is_word_byte(input[end]);
        if (!right_ok) continue;
        out += table.entries().at(key);
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) out += input[i++];
  }
  return out;
}

}  // namespace lingcx
