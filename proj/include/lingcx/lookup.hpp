// SPDX-License-Identifier: Apache-2.0
#pragma once

// Name -> ethnicity-probability lookups: the source interface, an offline
// TSV table source, the persistent cache and corpus annotation.

#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/ingest.hpp"
#include "lingcx/parallel.hpp"
#include "lingcx/text.hpp"

namespace lingcx::ethnicity {

/// External name -> distribution service. Implementations must be safe to
/// call concurrently and throw LookupUnavailable when a name cannot be resolved.
class Source {
 public:
  virtual ~Source() = default;
  virtual Probabilities lookup(const std::string& full_name) = 0;
};

namespace detail {

// Parses `name<TAB>ethnicity<TAB>probability` rows. A row whose ethnicity
// field is empty records a resolved name with an empty distribution.
inline std::map<std::string, Probabilities, std::less<>> read_triples(std::istream& in, const std::string& what) {
  std::map<std::string, Probabilities, std::less<>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line[0] == '#') continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3 || fields[0].empty()) throw CorruptRecord(lineno, what + ": expected name, ethnicity, probability");
    auto& dist = out[std::string(fields[0])];
    if (fields[1].empty()) continue;
    const auto canon = canonical_ethnicity(fields[1]);
    if (!canon) throw CorruptRecord(lineno, what + ": unknown ethnicity '" + std::string(fields[1]) + "'");
    const auto p = text::parse_double(fields[2]);
    if (!p || *p < 0.0 || *p > 1.0) throw CorruptRecord(lineno, what + ": bad probability");
    dist[std::string(*canon)] = *p;
  }
  return out;
}

}  // namespace detail

/// Offline source backed by a TSV table of name, ethnicity, probability.
class TableSource final : public Source {
 public:
  TableSource() = default;
  explicit TableSource(std::map<std::string, Probabilities, std::less<>> table) : table_(std::move(table)) {}

  static TableSource load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open ethnicity table " + path);
    return TableSource(detail::read_triples(in, path));
  }

  Probabilities lookup(const std::string& full_name) override {
    const auto it = table_.find(full_name);
    if (it == table_.end()) throw LookupUnavailable("no table entry for '" + full_name + "'");
    return it->second;
  }

 private:
  std::map<std::string, Probabilities, std::less<>> table_;
};

/// Persistent name -> distribution cache. Reads are concurrent; writes are
/// serialized. Saved as TSV sorted by name, then ethnicity.
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::map<std::string, Probabilities, std::less<>> entries) : entries_(std::move(entries)) {}

  /// A missing file yields an empty cache.
  static Cache load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return Cache();
    return Cache(detail::read_triples(in, path));
  }

  std::optional<Probabilities> find(std::string_view name) const {
    std::shared_lock lock(mutex_);
    const auto it = entries_.find(name);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void put(const std::string& name, Probabilities p) {
    std::unique_lock lock(mutex_);
    entries_[name] = std::move(p);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

  void save(std::ostream& out) const {
    std::shared_lock lock(mutex_);
    for (const auto& [name, dist] : entries_) {
      if (dist.empty()) out << name << "\t\t\n";
      for (const auto& [eth, p] : dist) out << name << '\t' << eth << '\t' << text::format_double(p) << '\n';
    }
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write ethnicity cache " + path);
    save(out);
    if (!out) throw IoFailure("write failed for " + path);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, Probabilities, std::less<>> entries_;
};

struct LookupFailure {
  std::string article_id;
  std::string message;
  friend bool operator==(const LookupFailure&, const LookupFailure&) = default;
};

struct AnnotateResult {
  std::vector<ingest::ArticleRecord> kept;
  std::vector<ingest::RemovalEntry> removed;
  std::vector<LookupFailure> failures;
  std::size_t names_resolved = 0;
  std::size_t names_failed = 0;
};

struct AnnotateOptions {
  EnglishDualPolicy policy = EnglishDualPolicy::include;
  std::size_t jobs = 1;
};

/// Resolves each article's first and corresponding author through the cache
/// (then `source`, when given), decides labels and assigns the manuscript
/// group. Articles with an Unknown leading author are removed; articles whose
/// lookup failed are reported in `failures` and appear in neither list.
inline AnnotateResult annotate_corpus(std::vector<ingest::ArticleRecord> records, Source* source, Cache& cache,
                                      const AnnotateOptions& options = {}) {
  std::set<std::string> distinct;
  for (const auto& r : records) {
    if (const auto* fa = ingest::first_author(r)) distinct.insert(fa->full_name);
    if (const auto* ca = ingest::corresponding_author(r)) distinct.insert(ca->full_name);
  }
  const std::vector<std::string> names(distinct.begin(), distinct.end());
  std::vector<std::optional<Probabilities>> resolved(names.size());
  std::vector<std::string> errors(names.size());

  parallel_for(names.size(), options.jobs, [&](std::size_t i) {
    auto hit = cache.find(names[i]);
    if (!hit && !source) {
      errors[i] = "no cache entry for '" + names[i] + "' and no lookup source";
      return;
    }
    try {
      Probabilities p = hit ? std::move(*hit) : source->lookup(names[i]);
      validate(p);
      if (!hit) cache.put(names[i], p);
      resolved[i] = std::move(p);
    } catch (const LookupUnavailable& e) {
      errors[i] = e.what();
    } catch (const InvalidDistribution& e) {
      errors[i] = "invalid distribution for '" + names[i] + "': " + e.what();
    }
  });

  AnnotateResult out;
  std::map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    index.emplace(names[i], i);
    if (resolved[i]) {
      ++out.names_resolved;
    } else {
      ++out.names_failed;
    }
  }

  for (auto& r : records) {
    const auto* fa = ingest::first_author(r);
    const auto* ca = ingest::corresponding_author(r);
    if (!fa || !ca) {
      out.failures.push_back({r.article_id, "article lacks a first or corresponding author"});
      continue;
    }
    const std::size_t fi = index.at(fa->full_name);
    const std::size_t ci = index.at(ca->full_name);
    if (!resolved[fi] || !resolved[ci]) {
      out.failures.push_back({r.article_id, !resolved[fi] ? errors[fi] : errors[ci]});
      continue;
    }
    Annotation ann;
    ann.fa = decide_label(*resolved[fi]);
    ann.ca = fi == ci ? ann.fa : decide_label(*resolved[ci]);
    if (ann.fa.kind == DecisionKind::unknown || ann.ca.kind == DecisionKind::unknown) {
      r.annotation.reset();
      out.removed.push_back({r.article_id, ingest::RemovalReason::unknown_ethnicity});
      continue;
    }
    ann.group = manuscript_group(ethnic_group(ann.fa, options.policy), ethnic_group(ann.ca, options.policy));
    r.annotation = std::move(ann);
    out.kept.push_back(std::move(r));
  }
  return out;
}

}  // namespace lingcx::ethnicity
