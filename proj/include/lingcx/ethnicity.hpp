// SPDX-License-Identifier: Apache-2.0
#pragma once

// Ethnea-style label decisions and manuscript grouping.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingcx/error.hpp"
#include "lingcx/text.hpp"

namespace lingcx::ethnicity {

inline constexpr std::array<std::string_view, 26> kEthnicities = {
    "English", "Hispanic", "Chinese",  "German",   "Japanese",  "French",   "Italian", "Slav",      "Indian",
    "Arab",    "Korean",   "Vietnamese", "Nordic", "Dutch",     "Turkish",  "Israeli", "Greek",     "African",
    "Hungarian", "Thai",   "Romanian", "Baltic",   "Indonesian", "Caribbean", "Mongolian", "Polynesian"};

/// Canonical spelling of an ethnicity name, matched case-insensitively.
inline std::optional<std::string_view> canonical_ethnicity(std::string_view name) {
  const std::string folded = text::ascii_lower(text::trim(name));
  for (const auto e : kEthnicities) {
    if (text::ascii_lower(e) == folded) return e;
  }
  return std::nullopt;
}

/// ethnicity name -> probability. Names absent from the map have probability 0.
using Probabilities = std::map<std::string, double, std::less<>>;

inline constexpr double kSumTolerance = 1e-9;
// Slack on the strict threshold comparisons so that decimal inputs like
// 0.05 * 12 are judged by their intended value.
inline constexpr double kThresholdSlack = 1e-12;
inline constexpr double kSingleThreshold = 0.60;
inline constexpr double kOtherThreshold = 0.20;

/// Throws InvalidDistribution unless every name is an Ethnea ethnicity, every
/// value lies in [0, 1] and the values sum to at most 1 + 1e-9.
inline void validate(const Probabilities& p) {
  double sum = 0.0;
  for (const auto& [name, v] : p) {
    const auto canon = canonical_ethnicity(name);
    if (!canon || *canon != name) throw InvalidDistribution("unknown ethnicity '" + name + "'");
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw InvalidDistribution("probability for " + name + " outside [0,1]");
    }
    sum += v;
  }
  if (sum > 1.0 + kSumTolerance) throw InvalidDistribution("probabilities sum to more than 1");
}

enum class DecisionKind { single, dual, unknown };

struct Decision {
  DecisionKind kind = DecisionKind::unknown;
  std::vector<std::string> labels;

  static Decision unknown() { return {}; }
  friend bool operator==(const Decision&, const Decision&) = default;
};

inline std::string_view to_string(DecisionKind k) {
  switch (k) {
    case DecisionKind::single: return "single";
    case DecisionKind::dual: return "dual";
    case DecisionKind::unknown: return "unknown";
  }
  return "unknown";
}

/// Single(top) when top > 0.60 and every other <= 0.20; Dual(top two) when
/// the top two sum to > 0.60 and every other <= 0.20; Unknown otherwise.
/// Equal probabilities are ordered by name.
inline Decision decide_label(const Probabilities& p) {
  validate(p);
  std::vector<std::pair<std::string, double>> ranked(p.begin(), p.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  auto above = [](double v, double t) { return v > t + kThresholdSlack; };
  auto prob = [&](std::size_t k) { return k < ranked.size() ? ranked[k].second : 0.0; };

  if (ranked.empty()) return Decision::unknown();
  if (above(prob(0), kSingleThreshold) && !above(prob(1), kOtherThreshold)) {
    return {DecisionKind::single, {ranked[0].first}};
  }
  if (ranked.size() >= 2 && above(prob(0) + prob(1), kSingleThreshold) && !above(prob(2), kOtherThreshold)) {
    return {DecisionKind::dual, {ranked[0].first, ranked[1].first}};
  }
  return Decision::unknown();
}

enum class GroupLabel { A, B };
enum class ManuscriptGroup { A, AB, B };

inline std::string_view to_string(GroupLabel g) { return g == GroupLabel::A ? "A" : "B"; }

inline std::string_view to_string(ManuscriptGroup g) {
  switch (g) {
    case ManuscriptGroup::A: return "A";
    case ManuscriptGroup::AB: return "AB";
    case ManuscriptGroup::B: return "B";
  }
  return "B";
}

inline std::optional<ManuscriptGroup> parse_manuscript_group(std::string_view s) {
  if (s == "A") return ManuscriptGroup::A;
  if (s == "AB") return ManuscriptGroup::AB;
  if (s == "B") return ManuscriptGroup::B;
  return std::nullopt;
}

inline constexpr std::array<ManuscriptGroup, 3> kGroups = {ManuscriptGroup::A, ManuscriptGroup::AB,
                                                           ManuscriptGroup::B};

/// How a Dual decision with English as one label is grouped.
enum class EnglishDualPolicy { include, exclude };

inline std::optional<EnglishDualPolicy> parse_english_dual_policy(std::string_view s) {
  if (s == "include") return EnglishDualPolicy::include;
  if (s == "exclude") return EnglishDualPolicy::exclude;
  return std::nullopt;
}

inline std::string_view to_string(EnglishDualPolicy p) {
  return p == EnglishDualPolicy::include ? "include" : "exclude";
}

inline GroupLabel ethnic_group(const Decision& d, EnglishDualPolicy policy = EnglishDualPolicy::include) {
  if (d.kind == DecisionKind::unknown) throw UnknownEthnicity("cannot group an author of unknown ethnicity");
  const bool english = std::find(d.labels.begin(), d.labels.end(), "English") != d.labels.end();
  if (!english) return GroupLabel::B;
  if (d.kind == DecisionKind::dual && policy == EnglishDualPolicy::exclude) return GroupLabel::B;
  return GroupLabel::A;
}

inline ManuscriptGroup manuscript_group(GroupLabel fa, GroupLabel ca) {
  if (fa == GroupLabel::A && ca == GroupLabel::A) return ManuscriptGroup::A;
  if (fa == GroupLabel::B && ca == GroupLabel::B) return ManuscriptGroup::B;
  return ManuscriptGroup::AB;
}

/// Ethnicity annotation attached to an article.
struct Annotation {
  Decision fa;
  Decision ca;
  ManuscriptGroup group = ManuscriptGroup::B;
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

}  // namespace lingcx::ethnicity
