// SPDX-License-Identifier: Apache-2.0
#pragma once

// Stage orchestration. Each stage reads only the files written by the
// previous one inside the output directory:
//
//   ingest    inputs             -> corpus.jsonl, ingest_removals.csv, ingest_failures.csv
//   annotate  corpus.jsonl       -> annotated.jsonl, annotate_removals.csv, lookup_failures.csv,
//                                   removals.csv, ethnicity cache
//   analyze   annotated.jsonl    -> features.csv, features.jsonl, analyze_skipped.csv
//   stats     features.jsonl     -> summary.csv, ks_matrix.{csv,json}, histograms.csv, joint.csv,
//                                   ttr_by_length{,_focus}.csv, ttr_overflow.csv, report.txt
//
// manifest.json accumulates counts and timings; it is the only output that
// varies between otherwise identical runs.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "lingcx/abbreviations.hpp"
#include "lingcx/config.hpp"
#include "lingcx/corpus_io.hpp"
#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/http_source.hpp"
#include "lingcx/ingest.hpp"
#include "lingcx/lookup.hpp"
#include "lingcx/metrics.hpp"
#include "lingcx/nlp/analyze.hpp"
#include "lingcx/nlp/tagger.hpp"
#include "lingcx/parallel.hpp"
#include "lingcx/report.hpp"
#include "lingcx/stats.hpp"

namespace lingcx::pipeline {

namespace fs = std::filesystem;

inline constexpr std::string_view kToolVersion = "1.0.0";

struct Layout {
  fs::path dir;

  fs::path corpus() const { return dir / "corpus.jsonl"; }
  fs::path ingest_removals() const { return dir / "ingest_removals.csv"; }
  fs::path ingest_failures() const { return dir / "ingest_failures.csv"; }
  fs::path annotated() const { return dir / "annotated.jsonl"; }
  fs::path annotate_removals() const { return dir / "annotate_removals.csv"; }
  fs::path lookup_failures() const { return dir / "lookup_failures.csv"; }
  fs::path removals() const { return dir / "removals.csv"; }
  fs::path default_cache() const { return dir / "ethnicity_cache.tsv"; }
  fs::path model() const { return dir / "pos_model.json"; }
  fs::path features_csv() const { return dir / "features.csv"; }
  fs::path features_jsonl() const { return dir / "features.jsonl"; }
  fs::path analyze_skipped() const { return dir / "analyze_skipped.csv"; }
  fs::path summary() const { return dir / "summary.csv"; }
  fs::path ks_csv() const { return dir / "ks_matrix.csv"; }
  fs::path ks_json() const { return dir / "ks_matrix.json"; }
  fs::path histograms() const { return dir / "histograms.csv"; }
  fs::path joint() const { return dir / "joint.csv"; }
  fs::path ttr_full() const { return dir / "ttr_by_length.csv"; }
  fs::path ttr_focus() const { return dir / "ttr_by_length_focus.csv"; }
  fs::path ttr_overflow() const { return dir / "ttr_overflow.csv"; }
  fs::path report() const { return dir / "report.txt"; }
  fs::path manifest() const { return dir / "manifest.json"; }
};

/// Writes a file through `fill`, raising IoFailure on any stream error.
inline void write_file(const fs::path& path, const std::function<void(std::ostream&)>& fill) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + path.string());
  fill(out);
  out.flush();
  if (!out) throw IoFailure("write failed for " + path.string());
}

inline void require_stage_input(const fs::path& p, std::string_view stage) {
  if (!fs::is_regular_file(p)) {
    throw StageContractViolation(std::string(stage) + " needs " + p.string() + "; run the previous stage first");
  }
}

inline void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoFailure("cannot create output directory " + dir.string());
}

class Manifest {
 public:
  static Manifest load(const Layout& layout) {
    Manifest m;
    std::ifstream in(layout.manifest());
    if (in) {
      try {
        m.j_ = nlohmann::ordered_json::parse(in);
      } catch (const nlohmann::json::parse_error&) {
        m.j_ = nlohmann::ordered_json::object();
      }
    }
    if (!m.j_.is_object()) m.j_ = nlohmann::ordered_json::object();
    return m;
  }

  void begin_stage(const RunConfig& cfg, std::string_view stage) {
    j_["tool"] = "lingcx";
    j_["version"] = kToolVersion;
    j_["config"] = cfg.to_json();
    if (!j_.contains("stages")) j_["stages"] = nlohmann::ordered_json::object();
    // a rerun invalidates everything downstream
    static constexpr std::array<std::string_view, 4> order = {"ingest", "annotate", "analyze", "stats"};
    bool downstream = false;
    for (const auto s : order) {
      if (downstream) j_["stages"].erase(std::string(s));
      if (s == stage) downstream = true;
    }
    j_["stages"].erase(std::string(stage));
    if (stage != "stats") j_.erase("reconciliation");
  }

  nlohmann::ordered_json& stage(std::string_view name) { return j_["stages"][std::string(name)]; }
  const nlohmann::ordered_json* find_stage(std::string_view name) const {
    if (!j_.contains("stages") || !j_["stages"].contains(std::string(name))) return nullptr;
    return &j_["stages"][std::string(name)];
  }
  nlohmann::ordered_json& root() { return j_; }

  void save(const Layout& layout) const {
    write_file(layout.manifest(), [&](std::ostream& out) { out << j_.dump(2) << '\n'; });
  }

 private:
  nlohmann::ordered_json j_ = nlohmann::ordered_json::object();
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline AbbreviationTable load_abbreviations(const RunConfig& cfg) {
  if (cfg.abbreviations.empty()) return AbbreviationTable::defaults();
  if (!fs::is_regular_file(cfg.abbreviations)) throw IoFailure("abbreviation table not found: " + cfg.abbreviations);
  return AbbreviationTable::load(cfg.abbreviations);
}

// ---------------------------------------------------------------- ingest

struct SourceFailure {
  std::string source;
  std::string message;
};

namespace detail {

inline std::string_view extension_for(ingest::SourceFormat f) {
  switch (f) {
    case ingest::SourceFormat::jats_xml: return ".xml";
    case ingest::SourceFormat::plain_text: return ".txt";
    case ingest::SourceFormat::jsonl_record: return ".jsonl";
  }
  return "";
}

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<fs::path> collect_inputs(const RunConfig& cfg) {
  if (cfg.input_paths.empty()) throw ConfigError("no input paths configured");
  const auto ext = extension_for(cfg.source_format());
  std::vector<fs::path> files;
  for (const auto& p : cfg.input_paths) {
    const fs::path path(p);
    if (fs::is_regular_file(path)) {
      files.push_back(path);
    } else if (fs::is_directory(path)) {
      for (const auto& e : fs::recursive_directory_iterator(path)) {
        if (e.is_regular_file() && e.path().extension() == ext) files.push_back(e.path());
      }
    } else {
      throw IoFailure("input path not found: " + p);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

inline std::vector<ingest::RawArticle> load_raw(const std::vector<fs::path>& files, ingest::SourceFormat format) {
  std::vector<ingest::RawArticle> raws;
  for (const auto& f : files) {
    std::string bytes = read_file(f);
    if (format != ingest::SourceFormat::jsonl_record) {
      raws.push_back({f.stem().string(), std::move(bytes), format});
      continue;
    }
    std::size_t pos = 0;
    std::size_t lineno = 0;
    while (pos < bytes.size()) {
      auto eol = bytes.find('\n', pos);
      if (eol == std::string::npos) eol = bytes.size();
      ++lineno;
      std::string line = bytes.substr(pos, eol - pos);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!text::trim(line).empty()) {
        raws.push_back({f.stem().string() + ":" + std::to_string(lineno), std::move(line), format});
      }
      pos = eol + 1;
    }
  }
  return raws;
}

template <typename Row, typename Fn>
void write_csv(const fs::path& path, std::string_view header, const std::vector<Row>& rows, Fn&& line) {
  write_file(path, [&](std::ostream& out) {
    out << header << '\n';
    for (const auto& r : rows) out << line(r) << '\n';
  });
}

inline nlohmann::ordered_json removal_counts(const std::vector<ingest::RemovalEntry>& removed) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto r : {ingest::RemovalReason::non_research, ingest::RemovalReason::no_corresponding_author,
                       ingest::RemovalReason::unknown_ethnicity}) {
    const auto n = std::count_if(removed.begin(), removed.end(), [&](const auto& e) { return e.reason == r; });
    if (n > 0) j[std::string(to_string(r))] = n;
  }
  return j;
}

}  // namespace detail

inline void run_ingest(const RunConfig& cfg, std::ostream& log) {
  Timer timer;
  const auto format = cfg.source_format();
  const auto files = detail::collect_inputs(cfg);
  const auto table = load_abbreviations(cfg);
  const Layout layout{cfg.output_dir};
  ensure_dir(layout.dir);

  const auto raws = detail::load_raw(files, format);
  std::vector<std::optional<ingest::ArticleRecord>> parsed(raws.size());
  std::vector<std::string> errors(raws.size());
  parallel_for(raws.size(), cfg.effective_jobs(), [&](std::size_t i) {
    try {
      auto rec = ingest::parse_article(raws[i]);
      ingest::finalize_record(rec, table);
      parsed[i] = std::move(rec);
    } catch (const MalformedInput& e) {
      errors[i] = e.what();
    } catch (const MissingBody& e) {
      errors[i] = e.what();
    }
  });

  std::vector<SourceFailure> failures;
  std::vector<ingest::ArticleRecord> records;
  for (std::size_t i = 0; i < raws.size(); ++i) {
    if (parsed[i]) {
      records.push_back(std::move(*parsed[i]));
    } else {
      failures.push_back({raws[i].article_id, errors[i]});
      log << "lingcx: warning: skipped " << raws[i].article_id << ": " << errors[i] << '\n';
    }
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.article_id < b.article_id; });
  std::vector<ingest::ArticleRecord> unique;
  for (auto& r : records) {
    if (!unique.empty() && unique.back().article_id == r.article_id) {
      failures.push_back({r.article_id, "duplicate article_id"});
      log << "lingcx: warning: duplicate article_id " << r.article_id << '\n';
      continue;
    }
    unique.push_back(std::move(r));
  }
  std::sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) {
    return std::tie(a.source, a.message) < std::tie(b.source, b.message);
  });

  auto filtered = ingest::filter_corpus(std::move(unique));
  ingest::write_corpus(filtered.kept, layout.corpus().string());
  ingest::write_removals(filtered.removed, layout.ingest_removals().string());
  detail::write_csv(layout.ingest_failures(), "source,message", failures, [](const SourceFailure& f) {
    return text::csv_field(f.source) + "," + text::csv_field(f.message);
  });

  auto manifest = Manifest::load(layout);
  manifest.begin_stage(cfg, "ingest");
  auto& s = manifest.stage("ingest");
  s["input"] = raws.size();
  s["parse_failures"] = failures.size();
  s["kept"] = filtered.kept.size();
  s["removed"] = detail::removal_counts(filtered.removed);
  s["seconds"] = timer.seconds();
  manifest.save(layout);
  log << "lingcx: ingest: " << raws.size() << " inputs, " << filtered.kept.size() << " kept, "
      << filtered.removed.size() << " removed, " << failures.size() << " failed\n";
}

// ---------------------------------------------------------------- annotate

inline std::unique_ptr<ethnicity::Source> make_source(const RunConfig& cfg) {
  const std::string& source = cfg.ethnicity_source;
  if (source.empty()) return nullptr;
  if (source.rfind("table:", 0) == 0) {
    const std::string path = source.substr(6);
    if (!fs::is_regular_file(path)) throw IoFailure("ethnicity table not found: " + path);
    return std::make_unique<ethnicity::TableSource>(ethnicity::TableSource::load(path));
  }
  if (source.rfind("http:", 0) == 0) {
    ethnicity::HttpOptions opt;
    opt.base_url = source.rfind("http://", 0) == 0 ? source : source.substr(5);
    opt.timeout_seconds = cfg.http_timeout_seconds;
    opt.retries = cfg.http_retries;
    return std::make_unique<ethnicity::HttpSource>(opt);
  }
  throw ConfigError("ethnicity source must be table:PATH or http:URL");
}

struct AnnotateStats {
  std::size_t names_resolved = 0;
  std::size_t names_failed = 0;
};

inline AnnotateStats run_annotate(const RunConfig& cfg, std::ostream& log) {
  Timer timer;
  const Layout layout{cfg.output_dir};
  require_stage_input(layout.corpus(), "annotate");
  require_stage_input(layout.ingest_removals(), "annotate");
  auto source = make_source(cfg);
  const fs::path cache_path = cfg.ethnicity_cache.empty() ? layout.default_cache() : fs::path(cfg.ethnicity_cache);

  auto records = ingest::read_corpus(layout.corpus().string());
  const std::size_t input = records.size();
  auto cache = ethnicity::Cache::load(cache_path.string());
  auto result = ethnicity::annotate_corpus(std::move(records), source.get(), cache,
                                           {cfg.english_dual_policy, cfg.effective_jobs()});
  cache.save(cache_path.string());

  ingest::write_corpus(result.kept, layout.annotated().string());
  ingest::write_removals(result.removed, layout.annotate_removals().string());
  detail::write_csv(layout.lookup_failures(), "article_id,message", result.failures,
                    [](const ethnicity::LookupFailure& f) {
                      return text::csv_field(f.article_id) + "," + text::csv_field(f.message);
                    });
  auto all_removals = ingest::read_removals(layout.ingest_removals().string());
  all_removals.insert(all_removals.end(), result.removed.begin(), result.removed.end());
  ingest::write_removals(all_removals, layout.removals().string());
  for (const auto& f : result.failures) log << "lingcx: warning: " << f.article_id << ": " << f.message << '\n';

  auto manifest = Manifest::load(layout);
  manifest.begin_stage(cfg, "annotate");
  auto& s = manifest.stage("annotate");
  s["input"] = input;
  s["kept"] = result.kept.size();
  s["removed"] = detail::removal_counts(result.removed);
  s["lookup_failures"] = result.failures.size();
  s["names_resolved"] = result.names_resolved;
  s["names_failed"] = result.names_failed;
  s["seconds"] = timer.seconds();
  manifest.save(layout);
  log << "lingcx: annotate: " << input << " articles, " << result.kept.size() << " grouped, " << result.removed.size()
      << " unknown, " << result.failures.size() << " lookup failures\n";

  const std::size_t names = result.names_resolved + result.names_failed;
  if (names > 0 &&
      static_cast<double>(result.names_failed) > cfg.max_failure_fraction * static_cast<double>(names)) {
    throw LookupUnavailable(std::to_string(result.names_failed) + " of " + std::to_string(names) +
                            " name lookups failed");
  }
  return {result.names_resolved, result.names_failed};
}

// ---------------------------------------------------------------- analyze

struct TrainReport {
  double heldout_accuracy = 0;
  std::size_t train_sentences = 0;
  std::size_t heldout_sentences = 0;
};

inline nlp::PosModel train_from_config(const RunConfig& cfg, TrainReport* report = nullptr) {
  const std::string path = cfg.tagger_corpus_or_default();
  if (!fs::is_regular_file(path)) throw IoFailure("tagger corpus not found: " + path);
  auto corpus = nlp::read_tagged_corpus(path);
  if (report) {
    auto [train, test] = nlp::split_corpus(corpus, 0.1, cfg.seed);
    const auto probe = nlp::train_tagger(train, cfg.tagger_epochs, cfg.seed);
    report->heldout_accuracy = nlp::tagging_accuracy(probe, test);
    report->train_sentences = train.size();
    report->heldout_sentences = test.size();
  }
  return nlp::train_tagger(corpus, cfg.tagger_epochs, cfg.seed);
}

inline nlp::PosModel obtain_model(const RunConfig& cfg, const Layout& layout, std::ostream& log) {
  if (!cfg.tagger_model.empty()) {
    if (!fs::is_regular_file(cfg.tagger_model)) throw IoFailure("tagger model not found: " + cfg.tagger_model);
    return nlp::PosModel::load(cfg.tagger_model);
  }
  log << "lingcx: training tagger on " << cfg.tagger_corpus_or_default() << '\n';
  auto model = train_from_config(cfg);
  model.save(layout.model().string());
  return model;
}

struct AnalyzeStats {
  std::size_t analyzed = 0;
  std::size_t skipped = 0;
  double articles_per_second = 0;
};

inline AnalyzeStats run_analyze(const RunConfig& cfg, std::ostream& log) {
  const Layout layout{cfg.output_dir};
  require_stage_input(layout.annotated(), "analyze");
  const auto table = load_abbreviations(cfg);
  const auto model = obtain_model(cfg, layout, log);
  Timer timer;

  auto records = ingest::read_corpus(layout.annotated().string());
  for (const auto& r : records) {
    if (!r.annotation) throw StageContractViolation(r.article_id + " has no ethnicity annotation");
  }
  std::vector<std::optional<report::FeatureRow>> rows(records.size());
  std::vector<std::string> errors(records.size());
  parallel_for(records.size(), cfg.effective_jobs(), [&](std::size_t i) {
    try {
      const auto doc = nlp::analyze_text(records[i].body_text, table, model);
      rows[i] = report::FeatureRow{records[i].article_id, records[i].annotation->group, metrics::compute_features(doc)};
    } catch (const EmptyDocument& e) {
      errors[i] = e.what();
    }
  });

  std::vector<report::FeatureRow> kept;
  std::vector<SourceFailure> skipped;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i]) {
      kept.push_back(std::move(*rows[i]));
    } else {
      skipped.push_back({records[i].article_id, errors[i]});
      log << "lingcx: warning: skipped " << records[i].article_id << ": " << errors[i] << '\n';
    }
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.article_id < b.article_id; });
  std::sort(skipped.begin(), skipped.end(), [](const auto& a, const auto& b) { return a.source < b.source; });
  const double seconds = timer.seconds();

  write_file(layout.features_csv(), [&](std::ostream& out) { report::write_features_csv(kept, out); });
  write_file(layout.features_jsonl(), [&](std::ostream& out) { report::write_features_jsonl(kept, out); });
  detail::write_csv(layout.analyze_skipped(), "article_id,message", skipped, [](const SourceFailure& f) {
    return text::csv_field(f.source) + "," + text::csv_field(f.message);
  });

  AnalyzeStats st{kept.size(), skipped.size(), seconds > 0 ? static_cast<double>(records.size()) / seconds : 0.0};
  auto manifest = Manifest::load(layout);
  manifest.begin_stage(cfg, "analyze");
  auto& s = manifest.stage("analyze");
  s["input"] = records.size();
  s["analyzed"] = st.analyzed;
  s["skipped"] = st.skipped;
  s["seconds"] = seconds;
  s["articles_per_second"] = st.articles_per_second;

  // input = analyzed + removals + failures, whenever the upstream counts are known
  const auto* ing = manifest.find_stage("ingest");
  const auto* ann = manifest.find_stage("annotate");
  if (ing && ann) {
    const auto input = (*ing)["input"].get<std::size_t>();
    std::size_t removed = 0;
    nlohmann::ordered_json by_reason = nlohmann::ordered_json::object();
    for (const auto* stage : {ing, ann}) {
      for (const auto& [reason, n] : (*stage)["removed"].items()) {
        by_reason[reason] = n;
        removed += n.get<std::size_t>();
      }
    }
    const std::size_t failures = (*ing)["parse_failures"].get<std::size_t>() +
                                 (*ann)["lookup_failures"].get<std::size_t>() + st.skipped;
    const bool balanced = input == st.analyzed + removed + failures &&
                          (*ann)["input"].get<std::size_t>() == (*ing)["kept"].get<std::size_t>() &&
                          records.size() == (*ann)["kept"].get<std::size_t>();
    auto& rec = manifest.root()["reconciliation"];
    rec["input"] = input;
    rec["analyzed"] = st.analyzed;
    rec["removals"] = by_reason;
    rec["failures"] = failures;
    rec["balanced"] = balanced;
    manifest.save(layout);
    if (!balanced) throw StageContractViolation("article counts do not reconcile across stages; see manifest.json");
  } else {
    manifest.save(layout);
  }
  log << "lingcx: analyze: " << st.analyzed << " analyzed, " << st.skipped << " skipped\n";
  return st;
}

// ---------------------------------------------------------------- stats

inline void run_stats(const RunConfig& cfg, std::ostream& log) {
  Timer timer;
  const Layout layout{cfg.output_dir};
  require_stage_input(layout.features_jsonl(), "stats");
  const auto rows = report::read_features_jsonl(layout.features_jsonl().string());
  const auto groups = report::group_rows(rows);

  const auto summary = stats::group_summary(groups);
  for (const auto g : ethnicity::kGroups) {
    if (!groups.contains(g)) log << "lingcx: warning: group " << ethnicity::to_string(g) << " has no articles\n";
  }
  write_file(layout.summary(), [&](std::ostream& out) { report::write_summary_csv(summary, out); });

  std::optional<stats::KSMatrix> ks;
  if (groups.size() >= 2) {
    ks = stats::ks_matrix(groups);
    write_file(layout.ks_csv(), [&](std::ostream& out) { report::write_ks_csv(*ks, out); });
    write_file(layout.ks_json(), [&](std::ostream& out) { out << report::ks_json(*ks) << '\n'; });
  } else {
    log << "lingcx: warning: fewer than two groups; KS table not produced\n";
    std::error_code ec;
    fs::remove(layout.ks_csv(), ec);
    fs::remove(layout.ks_json(), ec);
  }

  write_file(layout.histograms(),
             [&](std::ostream& out) { report::write_histograms_csv(groups, cfg.histogram_bins, out); });
  write_file(layout.joint(), [&](std::ostream& out) {
    report::write_joint_csv(groups, metrics::Feature::msl, metrics::Feature::clause_ratio, cfg.joint_bins, out);
  });

  std::vector<stats::LengthDoc> docs;
  std::size_t longest = 0;
  for (const auto& r : rows) {
    docs.push_back({r.group, r.features.ttr, r.features.word_token_count});
    longest = std::max(longest, r.features.word_token_count);
  }
  const std::size_t w = cfg.ttr_bin_width;
  const auto full = stats::ttr_by_length(docs, w, 0, (longest / w + 1) * w);
  const auto focus = stats::ttr_by_length(docs, w, cfg.ttr_focus_lo, cfg.ttr_focus_hi);
  write_file(layout.ttr_full(), [&](std::ostream& out) { report::write_binned_ttr_csv(full, out); });
  write_file(layout.ttr_focus(), [&](std::ostream& out) { report::write_binned_ttr_csv(focus, out); });
  write_file(layout.ttr_overflow(), [&](std::ostream& out) { report::write_ttr_overflow_csv(focus, out); });
  write_file(layout.report(), [&](std::ostream& out) { out << report::text_report(summary, ks); });

  auto manifest = Manifest::load(layout);
  manifest.begin_stage(cfg, "stats");
  auto& s = manifest.stage("stats");
  s["input"] = rows.size();
  s["groups"] = nlohmann::ordered_json::object();
  for (const auto& [g, docs_in_group] : groups) s["groups"][std::string(ethnicity::to_string(g))] = docs_in_group.size();
  s["ks_table"] = ks.has_value();
  s["seconds"] = timer.seconds();
  manifest.save(layout);
  log << "lingcx: stats: " << rows.size() << " articles in " << groups.size() << " groups\n";
}

inline void run_all(const RunConfig& cfg, std::ostream& log) {
  run_ingest(cfg, log);
  run_annotate(cfg, log);
  run_analyze(cfg, log);
  run_stats(cfg, log);
}

}  // namespace lingcx::pipeline
