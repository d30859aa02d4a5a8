// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingcx/config.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/metrics.hpp"
#include "lingcx/nlp/tagger.hpp"
#include "lingcx/pipeline.hpp"
#include "lingcx/stats.hpp"
#include "support/docs.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace lingcx;

namespace {

// Pinned limits.
constexpr double kGridSeconds = 1.0;
constexpr double kMetricsOracleSeconds = 10.0;
constexpr double kMetricPropertySeconds = 60.0;
constexpr double kKsSeconds = 30.0;
constexpr double kSyntheticSeconds = 300.0;
constexpr double kTaggerSeconds = 120.0;
constexpr double kScaleSeconds = 300.0;
constexpr double kGoldenTolerance = 1e-12;
constexpr double kKsP136 = 0.049;
constexpr double kKsP136Tolerance = 0.002;
constexpr double kSeriesAgreement = 1e-10;
constexpr double kTaggerAccuracy = 0.90;
constexpr std::size_t kRandomOracleDocs = 200;
constexpr std::size_t kRandomPropertyDocs = 1000;
constexpr std::size_t kSyntheticArticles = 300;
constexpr int kSyntheticReps = 20;
constexpr double kMslPValue = 0.01;
constexpr double kNullPValue = 0.05;
constexpr int kNullRepsRequired = 16;  // 80% of 20
constexpr std::size_t kNullFeaturesRequired = 8;
constexpr std::size_t kScaleArticles = 10000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_seconds) {
    o.pass = false;
    o.detail += "; exceeded time limit";
  }
  if (!o.pass) ++g_failures;
  std::printf("%s  %-34s %8.2f s (limit %.0f s)  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs, limit_seconds,
              o.detail.c_str());
  std::fflush(stdout);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::current_path() / "acceptance_scratch" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ------------------------------------------------------------------ ethnicity

// Straight-line restatement of the thresholds on integer hundredths.
ethnicity::Decision grid_oracle(const std::vector<std::pair<std::string, int>>& hundredths) {
  auto ranked = hundredths;
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  const int p1 = ranked[0].second, p2 = ranked[1].second, p3 = ranked[2].second;
  if (p1 > 60 && p2 <= 20) return {ethnicity::DecisionKind::single, {ranked[0].first}};
  if (p1 + p2 > 60 && p3 <= 20) return {ethnicity::DecisionKind::dual, {ranked[0].first, ranked[1].first}};
  return {};
}

Outcome ethnicity_grid() {
  using namespace ethnicity;
  const std::vector<std::string> names = {"English", "Chinese", "Korean"};
  std::size_t cases = 0, agree = 0;
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; a + b <= 20; ++b) {
      for (int c = 0; a + b + c <= 20; ++c) {
        const Probabilities p = {{names[0], a * 0.05}, {names[1], b * 0.05}, {names[2], c * 0.05}};
        const auto expect = grid_oracle({{names[0], a * 5}, {names[1], b * 5}, {names[2], c * 5}});
        ++cases;
        agree += decide_label(p) == expect ? 1 : 0;
      }
    }
  }
  const bool ex1 = decide_label({{"English", 0.70}, {"German", 0.10}}) == Decision{DecisionKind::single, {"English"}};
  const bool ex2 = decide_label({{"English", 0.40}, {"German", 0.30}, {"French", 0.10}}) ==
                   Decision{DecisionKind::dual, {"English", "German"}};
  const bool ex3 = decide_label({{"English", 0.30}, {"German", 0.25}, {"Chinese", 0.25}}).kind == DecisionKind::unknown;
  std::ostringstream d;
  d << agree << "/" << cases << " grid points agree; worked examples " << (ex1 && ex2 && ex3 ? "ok" : "WRONG");
  return {agree == cases && ex1 && ex2 && ex3, d.str()};
}

Outcome group_assignment() {
  using namespace ethnicity;
  const std::map<std::pair<GroupLabel, GroupLabel>, ManuscriptGroup> table = {
      {{GroupLabel::A, GroupLabel::A}, ManuscriptGroup::A},
      {{GroupLabel::A, GroupLabel::B}, ManuscriptGroup::AB},
      {{GroupLabel::B, GroupLabel::A}, ManuscriptGroup::AB},
      {{GroupLabel::B, GroupLabel::B}, ManuscriptGroup::B}};
  int ok = 0, symmetric = 0;
  for (const auto& [k, v] : table) {
    ok += manuscript_group(k.first, k.second) == v ? 1 : 0;
    symmetric += manuscript_group(k.first, k.second) == manuscript_group(k.second, k.first) ? 1 : 0;
  }
  return {ok == 4 && symmetric == 4,
          std::to_string(ok) + "/4 table cases, " + std::to_string(symmetric) + "/4 symmetric"};
}

// ------------------------------------------------------------------ metrics

Outcome metrics_oracle() {
  std::ifstream in(std::string(LINGCX_FIXTURES) + "/golden_features.json");
  const auto golden = nlohmann::json::parse(in);
  const auto v = metrics::compute_features(testing::golden_document());
  double worst = 0;
  bool shape = v.word_token_count == golden.at("word_token_count").get<std::size_t>() &&
               v.sentence_count == golden.at("sentence_count").get<std::size_t>();
  for (const auto f : metrics::kFeatures) {
    const auto got = metrics::feature_value(v, f);
    const auto& want = golden.at(std::string(metrics::feature_key(f)));
    if (want.is_null() || !got) {
      shape = shape && want.is_null() == !got;
      continue;
    }
    worst = std::max(worst, std::abs(*got - want.get<double>()));
  }
  std::mt19937_64 rng(2024);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < kRandomOracleDocs; ++i) {
    const auto doc = testing::random_document(rng);
    exact += metrics::compute_features(doc) == testing::naive_features(doc) ? 1 : 0;
  }
  std::ostringstream d;
  d << "golden max error " << worst << "; " << exact << "/" << kRandomOracleDocs << " random docs exact";
  return {shape && worst <= kGoldenTolerance && exact == kRandomOracleDocs, d.str()};
}

Outcome metric_invariants() {
  std::mt19937_64 rng(77);
  std::size_t doubling = 0, permutation = 0, bounds = 0;
  for (std::size_t i = 0; i < kRandomPropertyDocs; ++i) {
    auto doc = testing::random_document(rng);
    const auto v = metrics::compute_features(doc);

    auto twice = doc;
    twice.insert(twice.end(), doc.begin(), doc.end());
    const auto w = metrics::compute_features(twice);
    bool same = w.ttr <= v.ttr;
    for (const auto f : metrics::kFeatures) {
      if (f != metrics::Feature::ttr) same = same && metrics::feature_value(v, f) == metrics::feature_value(w, f);
    }
    doubling += same ? 1 : 0;

    auto shuffled = doc;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    permutation += metrics::compute_features(shuffled) == v ? 1 : 0;

    bool in_range = v.ttr > 0 && v.ttr <= 1 && v.msl >= 1 && v.clause_ratio >= 1;
    for (const double r : {v.noun_ratio, v.verb_ratio, v.adj_ratio, v.adv_ratio}) in_range = in_range && r >= 0 && r <= 1;
    in_range = in_range && v.noun_ratio + v.verb_ratio + v.adj_ratio + v.adv_ratio <= 1.0 + 1e-12;
    for (const auto& len : {v.noun_len, v.verb_len, v.adj_len, v.adv_len}) in_range = in_range && (!len || *len >= 1);
    bounds += in_range ? 1 : 0;
  }
  const auto n = kRandomPropertyDocs;
  std::ostringstream d;
  d << "doubling " << doubling << "/" << n << ", permutation " << permutation << "/" << n << ", bounds " << bounds
    << "/" << n;
  return {doubling == n && permutation == n && bounds == n, d.str()};
}

// ------------------------------------------------------------------ KS

std::vector<std::vector<double>> multisets(std::size_t max_n) {
  std::vector<std::vector<double>> out;
  std::function<void(std::vector<double>&, int, std::size_t)> rec = [&](std::vector<double>& cur, int lo,
                                                                          std::size_t left) {
    if (!cur.empty()) out.push_back(cur);
    if (left == 0) return;
    for (int v = lo; v <= 4; ++v) {
      cur.push_back(v);
      rec(cur, v, left - 1);
      cur.pop_back();
    }
  };
  std::vector<double> cur;
  rec(cur, 1, max_n);
  return out;
}

// sup over the grid 0.00, 0.01, ..., 5.00 kept as an exact fraction
double dense_grid_d(const std::vector<double>& xs, const std::vector<double>& ys) {
  const long long n1 = static_cast<long long>(xs.size());
  const long long n2 = static_cast<long long>(ys.size());
  long long best = 0;
  for (int g = 0; g <= 500; ++g) {
    const double t = g / 100.0;
    long long cx = 0, cy = 0;
    for (const double x : xs) cx += x <= t;
    for (const double y : ys) cy += y <= t;
    best = std::max(best, std::llabs(cx * n2 - cy * n1));
  }
  const long long q = n1 * n2;
  const long long gcd = std::gcd(best, q);
  return best == 0 ? 0.0 : static_cast<double>(best / gcd) / static_cast<double>(q / gcd);
}

// Q(lambda) through the dual (theta) form of the series, in long double.
long double kolmogorov_q_dual(long double lambda) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double sum = 0;
  for (int k = 1; k <= 50; ++k) {
    const long double m = 2.0L * k - 1.0L;
    sum += std::exp(-m * m * pi * pi / (8.0L * lambda * lambda));
  }
  return 1.0L - std::sqrt(2.0L * pi) / lambda * sum;
}

Outcome ks_correctness() {
  const auto sets = multisets(6);
  std::size_t pairs = 0, exact = 0;
  for (const auto& xs : sets) {
    for (const auto& ys : sets) {
      ++pairs;
      exact += stats::ks_two_sample(xs, ys).d_statistic == dense_grid_d(xs, ys) ? 1 : 0;
    }
  }
  const double p = stats::kolmogorov_q(1.36);
  const double oracle = static_cast<double>(kolmogorov_q_dual(1.36L));
  const std::vector<double> sample = {0.5, 1.5, 1.5, 2.25, 9};
  const auto same = stats::ks_two_sample(sample, sample);
  std::ostringstream d;
  d.precision(6);
  d << exact << "/" << pairs << " pairs exact; Q(1.36)=" << p << " vs dual series " << oracle
    << "; identical d=" << same.d_statistic << " p=" << same.p_value;
  return {exact == pairs && std::abs(p - kKsP136) <= kKsP136Tolerance && std::abs(p - oracle) <= kSeriesAgreement &&
              same.d_statistic == 0.0 && same.p_value == 1.0,
          d.str()};
}

// ------------------------------------------------------------------ pipeline runs

RunConfig synthetic_config(const fs::path& dir, const std::string& model, std::size_t jobs) {
  RunConfig cfg;
  cfg.input_paths = {(dir / "articles.jsonl").string()};
  cfg.input_format = "jsonl";
  cfg.ethnicity_source = "table:" + (dir / "names.tsv").string();
  cfg.tagger_model = model;
  cfg.output_dir = (dir / "out").string();
  cfg.jobs = jobs;
  return cfg;
}

std::map<std::string, std::string> read_csv_rows(const fs::path& p, std::size_t key_columns) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::string> out;
  while (std::getline(in, line)) {
    const auto f = text::parse_csv_line(line);
    std::string key;
    for (std::size_t k = 0; k < key_columns; ++k) key += f[k] + "|";
    out[key] = line;
  }
  return out;
}

double csv_number(const std::string& s) {
  if (!s.empty() && s[0] == '<') return 0.0;
  return text::parse_double(s).value();
}

Outcome synthetic_discrimination(const std::string& model_path) {
  const std::vector<metrics::Feature> nulls = {
      metrics::Feature::ttr,        metrics::Feature::noun_len,   metrics::Feature::verb_len,
      metrics::Feature::adj_len,    metrics::Feature::adv_len,    metrics::Feature::noun_ratio,
      metrics::Feature::verb_ratio, metrics::Feature::adj_ratio,  metrics::Feature::adv_ratio};
  std::map<metrics::Feature, int> null_ok;
  int ordering_ok = 0, msl_ok = 0;
  std::ostringstream sink;
  for (int rep = 0; rep < kSyntheticReps; ++rep) {
    testing::SyntheticOptions opt;
    opt.per_group = kSyntheticArticles / 3;
    opt.seed = 1000 + static_cast<std::uint64_t>(rep);
    const auto corpus = testing::make_synthetic_corpus(opt);
    const auto dir = scratch("synthetic_" + std::to_string(rep));
    testing::write_lines((dir / "articles.jsonl").string(), corpus.jsonl_lines);
    testing::write_lines((dir / "names.tsv").string(), corpus.table_lines);
    const auto cfg = synthetic_config(dir, model_path, 0);
    pipeline::run_all(cfg, sink);

    const fs::path out = cfg.output_dir;
    const auto summary = read_csv_rows(out / "summary.csv", 2);
    auto mean = [&](const char* g, const char* f) {
      return csv_number(text::parse_csv_line(summary.at(std::string(g) + "|" + f + "|"))[4]);
    };
    if (mean("A", "msl") > mean("AB", "msl") && mean("AB", "msl") > mean("B", "msl")) ++ordering_ok;
    const auto ks = read_csv_rows(out / "ks_matrix.csv", 2);
    auto p_ab = [&](metrics::Feature f) {
      return csv_number(text::parse_csv_line(ks.at(std::string(metrics::feature_key(f)) + "|(A,B)|"))[3]);
    };
    if (p_ab(metrics::Feature::msl) < kMslPValue) ++msl_ok;
    for (const auto f : nulls) null_ok[f] += p_ab(f) > kNullPValue ? 1 : 0;
    fs::remove_all(dir);
  }
  std::size_t null_features = 0;
  std::ostringstream d;
  d << "msl A>AB>B in " << ordering_ok << "/" << kSyntheticReps << ", (A,B) msl p<0.01 in " << msl_ok << "/"
    << kSyntheticReps << "; null features p>0.05 reps:";
  for (const auto f : nulls) {
    d << ' ' << metrics::feature_key(f) << '=' << null_ok[f];
    null_features += null_ok[f] >= kNullRepsRequired ? 1 : 0;
  }
  d << " (" << null_features << "/" << nulls.size() << " features at >= " << kNullRepsRequired << ")";
  return {ordering_ok == kSyntheticReps && msl_ok == kSyntheticReps && null_features >= kNullFeaturesRequired,
          d.str()};
}

Outcome tagger_quality() {
  const auto corpus = nlp::read_tagged_corpus(default_tagger_corpus());
  const auto [train, test] = nlp::split_corpus(corpus, 0.1, 42);
  const auto model = nlp::train_tagger(train, 5, 42);
  const double acc = nlp::tagging_accuracy(model, test);
  std::size_t tokens = 0;
  for (const auto& s : test) tokens += s.size();
  std::ostringstream d;
  d << "held-out accuracy " << acc << " on " << test.size() << " sentences / " << tokens << " tokens (train "
    << train.size() << ")";
  return {acc >= kTaggerAccuracy, d.str()};
}

std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename() == "manifest.json") continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out[e.path().filename().string()] = ss.str();
  }
  return out;
}

Outcome determinism_and_scale(double& slowest_run) {
  testing::SyntheticOptions opt;
  opt.per_group = (kScaleArticles + 2) / 3;
  opt.units_per_article = 12;
  opt.seed = 99;
  opt.non_research_share = 0.03;
  opt.unknown_share = 0.03;
  const auto corpus = testing::make_synthetic_corpus(opt);
  std::map<std::string, std::string> results[2];
  double seconds[2] = {0, 0};
  const std::size_t jobs[2] = {1, 8};
  for (int k = 0; k < 2; ++k) {
    const auto dir = scratch("scale_jobs" + std::to_string(jobs[k]));
    testing::write_lines((dir / "articles.jsonl").string(), corpus.jsonl_lines);
    testing::write_lines((dir / "names.tsv").string(), corpus.table_lines);
    // both runs train their own tagger: the whole pipeline is under test
    const auto cfg = synthetic_config(dir, "", jobs[k]);
    std::ostringstream sink;
    const auto t0 = std::chrono::steady_clock::now();
    pipeline::run_all(cfg, sink);
    seconds[k] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results[k] = outputs(cfg.output_dir);
    fs::remove_all(dir);
  }
  slowest_run = std::max(seconds[0], seconds[1]);
  std::size_t differing = 0;
  for (const auto& [name, bytes] : results[0]) {
    const auto it = results[1].find(name);
    differing += it == results[1].end() || it->second != bytes ? 1 : 0;
  }
  differing += results[0].size() != results[1].size() ? 1 : 0;
  std::ostringstream d;
  d << corpus.jsonl_lines.size() << " articles; " << results[0].size() << " output files, " << differing
    << " differ; jobs=1 " << seconds[0] << " s, jobs=8 " << seconds[1] << " s";
  return {differing == 0 && !results[0].empty() && slowest_run < kScaleSeconds, d.str()};
}

}  // namespace

int main() {
  std::printf("lingcx acceptance\n");
  criterion("ethnicity decision rule", kGridSeconds, ethnicity_grid);
  criterion("group assignment", kGridSeconds, group_assignment);
  criterion("metrics oracle", kMetricsOracleSeconds, metrics_oracle);
  criterion("metric invariants", kMetricPropertySeconds, metric_invariants);
  criterion("KS correctness", kKsSeconds, ks_correctness);

  // one model shared by the synthetic repetitions, trained exactly as the pipeline would
  const auto model_dir = scratch("model");
  const auto model_path = (model_dir / "pos_model.json").string();
  pipeline::train_from_config(RunConfig{}).save(model_path);
  criterion("synthetic discrimination", kSyntheticSeconds, [&] { return synthetic_discrimination(model_path); });

  criterion("tagger quality", kTaggerSeconds, tagger_quality);
  double slowest = 0;
  criterion("determinism and scale", 2 * kScaleSeconds, [&] { return determinism_and_scale(slowest); });

  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
  return g_failures == 0 ? 0 : 1;
}
