// SPDX-License-Identifier: Apache-2.0
// lingcx command-line driver.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lingcx/config.hpp"
#include "lingcx/error.hpp"
#include "lingcx/nlp/tagger.hpp"
#include "lingcx/pipeline.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 2, kIoError = 3, kContractViolation = 4 };

struct Overrides {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string out_dir;
  std::optional<std::size_t> jobs;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string ethnicity_source;
  std::string english_dual;
  std::string cache;
  std::string model;
  std::string abbreviations;
  std::string tagger_corpus;
  std::optional<int> epochs;
};

lingcx::RunConfig resolve(const Overrides& o) {
  lingcx::RunConfig cfg = o.config_path.empty() ? lingcx::RunConfig{} : lingcx::RunConfig::load(o.config_path);
  if (!o.inputs.empty()) cfg.input_paths = o.inputs;
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.seed) cfg.seed = *o.seed;
  if (!o.format.empty()) cfg.input_format = o.format;
  if (!o.ethnicity_source.empty()) cfg.ethnicity_source = o.ethnicity_source;
  if (!o.english_dual.empty()) {
    const auto p = lingcx::ethnicity::parse_english_dual_policy(o.english_dual);
    if (!p) throw lingcx::ConfigError("--english-dual must be include or exclude");
    cfg.english_dual_policy = *p;
  }
  if (!o.cache.empty()) cfg.ethnicity_cache = o.cache;
  if (!o.model.empty()) cfg.tagger_model = o.model;
  if (!o.abbreviations.empty()) cfg.abbreviations = o.abbreviations;
  if (!o.tagger_corpus.empty()) cfg.tagger_corpus = o.tagger_corpus;
  if (o.epochs) cfg.tagger_epochs = *o.epochs;
  cfg.validate_values();
  return cfg;
}

int train_tagger_command(const lingcx::RunConfig& cfg, const std::string& model_out) {
  lingcx::pipeline::TrainReport report;
  const auto model = lingcx::pipeline::train_from_config(cfg, &report);
  std::filesystem::path out = model_out;
  if (out.empty()) {
    lingcx::pipeline::ensure_dir(cfg.output_dir);
    out = lingcx::pipeline::Layout{cfg.output_dir}.model();
  }
  model.save(out.string());
  std::cout << "held-out accuracy " << report.heldout_accuracy << " (" << report.train_sentences << " train / "
            << report.heldout_sentences << " held-out sentences, seed " << cfg.seed << ", " << cfg.tagger_epochs
            << " epochs)\n"
            << "model written to " << out.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lingcx: linguistic-complexity corpus toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration");
  app.add_option("--input", o.inputs, "Input files or directories");
  app.add_option("--out-dir", o.out_dir, "Output directory");
  app.add_option("--jobs", o.jobs, "Worker threads (0 = all CPUs)");
  app.add_option("--seed", o.seed, "Seed for all randomness");
  app.add_option("--format", o.format, "Input format")->check(CLI::IsMember({"xml", "text", "jsonl"}));
  app.add_option("--ethnicity-source", o.ethnicity_source, "table:PATH or http:URL");
  app.add_option("--english-dual", o.english_dual, "Grouping of English-inclusive dual labels")
      ->check(CLI::IsMember({"include", "exclude"}));
  app.add_option("--cache", o.cache, "Ethnicity cache TSV");
  app.add_option("--model", o.model, "POS model file");
  app.add_option("--abbreviations", o.abbreviations, "Abbreviation table TSV");
  app.add_option("--tagger-corpus", o.tagger_corpus, "Tagged corpus for training");
  app.add_option("--epochs", o.epochs, "Tagger training epochs");

  auto* ingest = app.add_subcommand("ingest", "Parse and filter input articles");
  auto* annotate = app.add_subcommand("annotate", "Resolve author ethnicity and assign groups");
  auto* analyze = app.add_subcommand("analyze", "Compute per-article features");
  auto* stats = app.add_subcommand("stats", "Group summaries, KS tests and distributions");
  auto* run = app.add_subcommand("run", "Run every stage");
  auto* train = app.add_subcommand("train-tagger", "Train and save a POS model");
  std::string model_out;
  train->add_option("--output", model_out, "Where to write the model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    const auto cfg = resolve(o);
    if (ingest->parsed()) lingcx::pipeline::run_ingest(cfg, std::cerr);
    if (annotate->parsed()) lingcx::pipeline::run_annotate(cfg, std::cerr);
    if (analyze->parsed()) lingcx::pipeline::run_analyze(cfg, std::cerr);
    if (stats->parsed()) lingcx::pipeline::run_stats(cfg, std::cerr);
    if (run->parsed()) lingcx::pipeline::run_all(cfg, std::cerr);
    if (train->parsed()) return train_tagger_command(cfg, model_out);
    return kOk;
  } catch (const lingcx::ConfigError& e) {
    std::cerr << "lingcx: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const lingcx::StageContractViolation& e) {
    std::cerr << "lingcx: stage contract violation: " << e.what() << '\n';
    return kContractViolation;
  } catch (const lingcx::CorruptRecord& e) {
    std::cerr << "lingcx: corrupt stage file: " << e.what() << '\n';
    return kContractViolation;
  } catch (const lingcx::Error& e) {
    std::cerr << "lingcx: error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "lingcx: error: " << e.what() << '\n';
    return kIoError;
  }
}
