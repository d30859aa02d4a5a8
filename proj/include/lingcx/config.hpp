// SPDX-License-Identifier: Apache-2.0
#pragma once

// Run configuration. The file form is a versioned JSON tree:
//
// {
//   "config_version": 1,
//   "input": {"paths": ["articles/"], "format": "xml"},
//   "abbreviations": "",                 // empty: built-in table
//   "tagger": {"model": "", "corpus": "", "epochs": 5},
//   "ethnicity": {"source": "table:names.tsv", "cache": "cache.tsv",
//                 "english_dual_policy": "include", "timeout_seconds": 10,
//                 "retries": 2, "max_failure_fraction": 0.5},
//   "stats": {"ttr_bin_width": 1000, "ttr_focus": [6000, 10000],
//             "histogram_bins": 60, "joint_bins": 30},
//   "output_dir": "out",
//   "jobs": 0,                           // 0: all hardware threads
//   "seed": 42
// }
//
// Every key except config_version is optional; unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/ingest.hpp"
#include "lingcx/parallel.hpp"

namespace lingcx {

#ifndef LINGCX_DATA_DIR
#define LINGCX_DATA_DIR "data"
#endif

inline std::string default_tagger_corpus() { return std::string(LINGCX_DATA_DIR) + "/seed_corpus.tsv"; }

struct RunConfig {
  static constexpr int kVersion = 1;

  std::vector<std::string> input_paths;
  std::string input_format = "xml";
  std::string abbreviations;
  std::string tagger_model;
  std::string tagger_corpus;
  int tagger_epochs = 5;
  std::string ethnicity_source;  // "", "table:PATH" or "http:URL"
  std::string ethnicity_cache;
  ethnicity::EnglishDualPolicy english_dual_policy = ethnicity::EnglishDualPolicy::include;
  double http_timeout_seconds = 10.0;
  int http_retries = 2;
  double max_failure_fraction = 0.5;
  std::size_t ttr_bin_width = 1000;
  std::size_t ttr_focus_lo = 6000;
  std::size_t ttr_focus_hi = 10000;
  std::size_t histogram_bins = 60;
  std::size_t joint_bins = 30;
  std::string output_dir = "out";
  std::size_t jobs = 0;
  std::uint64_t seed = 42;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;

  ingest::SourceFormat source_format() const {
    const auto f = ingest::parse_source_format(input_format);
    if (!f) throw ConfigError("unknown input format '" + input_format + "' (expected xml, text or jsonl)");
    return *f;
  }

  std::string tagger_corpus_or_default() const {
    return tagger_corpus.empty() ? default_tagger_corpus() : tagger_corpus;
  }

  nlohmann::ordered_json to_json() const {
    return {{"config_version", kVersion},
            {"input", {{"paths", input_paths}, {"format", input_format}}},
            {"abbreviations", abbreviations},
            {"tagger", {{"model", tagger_model}, {"corpus", tagger_corpus}, {"epochs", tagger_epochs}}},
            {"ethnicity",
             {{"source", ethnicity_source},
              {"cache", ethnicity_cache},
              {"english_dual_policy", ethnicity::to_string(english_dual_policy)},
              {"timeout_seconds", http_timeout_seconds},
              {"retries", http_retries},
              {"max_failure_fraction", max_failure_fraction}}},
            {"stats",
             {{"ttr_bin_width", ttr_bin_width},
              {"ttr_focus", {ttr_focus_lo, ttr_focus_hi}},
              {"histogram_bins", histogram_bins},
              {"joint_bins", joint_bins}}},
            {"output_dir", output_dir},
            {"jobs", jobs},
            {"seed", seed}};
  }

  static RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig c;
    try {
      check_keys(j, {"config_version", "input", "abbreviations", "tagger", "ethnicity", "stats", "output_dir", "jobs",
                     "seed"},
                 "config");
      if (!j.contains("config_version")) throw ConfigError("config_version is required");
      if (j.at("config_version").get<int>() != kVersion) {
        throw ConfigError("unsupported config_version " + j.at("config_version").dump());
      }
      if (j.contains("input")) {
        const auto& in = j.at("input");
        check_keys(in, {"paths", "format"}, "input");
        if (in.contains("paths")) c.input_paths = in.at("paths").get<std::vector<std::string>>();
        if (in.contains("format")) c.input_format = in.at("format").get<std::string>();
      }
      if (j.contains("abbreviations")) c.abbreviations = j.at("abbreviations").get<std::string>();
      if (j.contains("tagger")) {
        const auto& t = j.at("tagger");
        check_keys(t, {"model", "corpus", "epochs"}, "tagger");
        if (t.contains("model")) c.tagger_model = t.at("model").get<std::string>();
        if (t.contains("corpus")) c.tagger_corpus = t.at("corpus").get<std::string>();
        if (t.contains("epochs")) c.tagger_epochs = t.at("epochs").get<int>();
      }
      if (j.contains("ethnicity")) {
        const auto& e = j.at("ethnicity");
        check_keys(e, {"source", "cache", "english_dual_policy", "timeout_seconds", "retries", "max_failure_fraction"},
                   "ethnicity");
        if (e.contains("source")) c.ethnicity_source = e.at("source").get<std::string>();
        if (e.contains("cache")) c.ethnicity_cache = e.at("cache").get<std::string>();
        if (e.contains("english_dual_policy")) {
          const auto p = ethnicity::parse_english_dual_policy(e.at("english_dual_policy").get<std::string>());
          if (!p) throw ConfigError("english_dual_policy must be include or exclude");
          c.english_dual_policy = *p;
        }
        if (e.contains("timeout_seconds")) c.http_timeout_seconds = e.at("timeout_seconds").get<double>();
        if (e.contains("retries")) c.http_retries = e.at("retries").get<int>();
        if (e.contains("max_failure_fraction")) c.max_failure_fraction = e.at("max_failure_fraction").get<double>();
      }
      if (j.contains("stats")) {
        const auto& s = j.at("stats");
        check_keys(s, {"ttr_bin_width", "ttr_focus", "histogram_bins", "joint_bins"}, "stats");
        if (s.contains("ttr_bin_width")) c.ttr_bin_width = s.at("ttr_bin_width").get<std::size_t>();
        if (s.contains("ttr_focus")) {
          const auto r = s.at("ttr_focus").get<std::vector<std::size_t>>();
          if (r.size() != 2) throw ConfigError("ttr_focus must be [lo, hi]");
          c.ttr_focus_lo = r[0];
          c.ttr_focus_hi = r[1];
        }
        if (s.contains("histogram_bins")) c.histogram_bins = s.at("histogram_bins").get<std::size_t>();
        if (s.contains("joint_bins")) c.joint_bins = s.at("joint_bins").get<std::size_t>();
      }
      if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
      if (j.contains("jobs")) c.jobs = j.at("jobs").get<std::size_t>();
      if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("bad config value: ") + e.what());
    }
    c.validate_values();
    return c;
  }

  static RunConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write config " + path);
    out << to_json().dump(2) << '\n';
  }

  void validate_values() const {
    source_format();
    if (tagger_epochs <= 0) throw ConfigError("tagger epochs must be positive");
    if (ttr_bin_width == 0) throw ConfigError("ttr_bin_width must be positive");
    if (ttr_focus_hi <= ttr_focus_lo) throw ConfigError("ttr_focus range is empty");
    if (histogram_bins == 0 || joint_bins == 0) throw ConfigError("bin counts must be positive");
    if (http_retries < 0 || !(http_timeout_seconds > 0)) throw ConfigError("bad HTTP timeout or retry count");
    if (!(max_failure_fraction >= 0 && max_failure_fraction <= 1)) {
      throw ConfigError("max_failure_fraction must lie in [0, 1]");
    }
    if (!ethnicity_source.empty() && ethnicity_source.rfind("table:", 0) != 0 &&
        ethnicity_source.rfind("http:", 0) != 0) {
      throw ConfigError("ethnicity source must be table:PATH or http:URL");
    }
    if (output_dir.empty()) throw ConfigError("output_dir is empty");
  }

  std::size_t effective_jobs() const { return jobs == 0 ? default_jobs() : jobs; }

 private:
  static void check_keys(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
      bool ok = false;
      for (const auto a : allowed) ok = ok || a == key;
      if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
};

}  // namespace lingcx
