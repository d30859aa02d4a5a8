// SPDX-License-Identifier: Apache-2.0
#pragma once

// Feature-row persistence and the plot-ready statistics exports.
//
//   features.csv        article_id,group,<11 features>            (absent = empty)
//   features.jsonl      one object per article, incl. word/sentence counts
//   summary.csv         group,feature,n,excluded,mean,median,std
//   ks_matrix.csv       feature,pair,d,p,n1,n2                    (p < 1e-300 -> "<1e-300")
//   histograms.csv      feature,group,bin,lo,hi,count,density
//   joint.csv           x_feature,y_feature,group,x_bin,y_bin,x_lo,x_hi,y_lo,y_hi,count
//   ttr_by_length.csv   group,bin_lo,bin_hi,count,mean,median

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/metrics.hpp"
#include "lingcx/stats.hpp"
#include "lingcx/text.hpp"

namespace lingcx::report {

using ethnicity::ManuscriptGroup;
using metrics::Feature;
using metrics::FeatureVector;

struct FeatureRow {
  std::string article_id;
  ManuscriptGroup group = ManuscriptGroup::A;
  FeatureVector features;
  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

inline std::string optional_field(const std::optional<double>& v) { return v ? text::format_double(*v) : ""; }

inline std::string format_p(double p) { return p < 1e-300 ? "<1e-300" : text::format_double(p); }

inline void write_features_csv(std::span<const FeatureRow> rows, std::ostream& out) {
  out << "article_id,group";
  for (const auto f : metrics::kFeatures) out << ',' << metrics::feature_key(f);
  out << '\n';
  for (const auto& r : rows) {
    out << text::csv_field(r.article_id) << ',' << ethnicity::to_string(r.group);
    for (const auto f : metrics::kFeatures) out << ',' << optional_field(metrics::feature_value(r.features, f));
    out << '\n';
  }
}

inline std::string feature_row_to_json(const FeatureRow& r) {
  nlohmann::ordered_json j;
  j["article_id"] = r.article_id;
  j["group"] = ethnicity::to_string(r.group);
  for (const auto f : metrics::kFeatures) {
    const auto v = metrics::feature_value(r.features, f);
    j[std::string(metrics::feature_key(f))] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  }
  j["word_token_count"] = r.features.word_token_count;
  j["sentence_count"] = r.features.sentence_count;
  return j.dump();
}

inline FeatureRow feature_row_from_json(std::string_view line, std::size_t lineno) {
  try {
    const auto j = nlohmann::json::parse(line);
    FeatureRow r;
    r.article_id = j.at("article_id").get<std::string>();
    const auto g = ethnicity::parse_manuscript_group(j.at("group").get<std::string>());
    if (!g) throw CorruptRecord(lineno, "bad group");
    r.group = *g;
    for (const auto f : metrics::kFeatures) {
      const auto& v = j.at(std::string(metrics::feature_key(f)));
      metrics::set_feature_value(r.features, f, v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
    }
    r.features.word_token_count = j.at("word_token_count").get<std::size_t>();
    r.features.sentence_count = j.at("sentence_count").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptRecord(lineno, e.what());
  }
}

inline void write_features_jsonl(std::span<const FeatureRow> rows, std::ostream& out) {
  for (const auto& r : rows) out << feature_row_to_json(r) << '\n';
}

inline std::vector<FeatureRow> read_features_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open features " + path);
  std::vector<FeatureRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    rows.push_back(feature_row_from_json(line, lineno));
  }
  return rows;
}

inline stats::GroupedFeatures group_rows(std::span<const FeatureRow> rows) {
  stats::GroupedFeatures g;
  for (const auto& r : rows) g[r.group].push_back(r.features);
  return g;
}

inline void write_summary_csv(const std::map<ManuscriptGroup, stats::GroupSummary>& summary, std::ostream& out) {
  out << "group,feature,n,excluded,mean,median,std\n";
  for (const auto& [g, s] : summary) {
    for (const auto f : metrics::kFeatures) {
      const auto& fs = s.features[static_cast<std::size_t>(f)];
      out << ethnicity::to_string(g) << ',' << metrics::feature_key(f) << ',' << fs.n << ',' << fs.excluded << ','
          << optional_field(fs.mean) << ',' << optional_field(fs.median) << ',' << optional_field(fs.std_dev) << '\n';
    }
  }
}

inline void write_ks_csv(const stats::KSMatrix& m, std::ostream& out) {
  out << "feature,pair,d,p,n1,n2\n";
  for (const auto f : metrics::kFeatures) {
    for (std::size_t p = 0; p < stats::kPairs.size(); ++p) {
      out << metrics::feature_key(f) << ',' << text::csv_field(stats::pair_name(stats::kPairs[p])) << ',';
      if (const auto& c = m.at(f, p)) {
        out << text::format_double(c->d_statistic) << ',' << format_p(c->p_value) << ',' << c->n1 << ',' << c->n2;
      } else {
        out << ",,,";
      }
      out << '\n';
    }
  }
}

inline std::string ks_json(const stats::KSMatrix& m) {
  nlohmann::ordered_json j;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& p : stats::kPairs) j["pairs"].push_back(stats::pair_name(p));
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto f : metrics::kFeatures) {
    nlohmann::ordered_json row;
    row["feature"] = metrics::feature_key(f);
    row["label"] = metrics::feature_label(f);
    row["cells"] = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < stats::kPairs.size(); ++p) {
      const auto& c = m.at(f, p);
      if (!c) {
        row["cells"].push_back(nullptr);
        continue;
      }
      row["cells"].push_back(
          {{"d", c->d_statistic}, {"p", c->p_value}, {"p_text", format_p(c->p_value)}, {"n1", c->n1}, {"n2", c->n2}});
    }
    j["rows"].push_back(std::move(row));
  }
  return j.dump(2);
}

inline void write_histogram_rows(Feature f, ManuscriptGroup g, const stats::Histogram& h, std::ostream& out) {
  const auto dens = h.density();
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    out << metrics::feature_key(f) << ',' << ethnicity::to_string(g) << ',' << k << ','
        << text::format_double(h.edges[k]) << ',' << text::format_double(h.edges[k + 1]) << ',' << h.counts[k] << ','
        << text::format_double(dens[k]) << '\n';
  }
}

/// Per-feature histograms for every group over edges shared by all groups.
inline void write_histograms_csv(const stats::GroupedFeatures& groups, std::size_t bins, std::ostream& out) {
  out << "feature,group,bin,lo,hi,count,density\n";
  for (const auto f : metrics::kFeatures) {
    std::vector<double> all;
    for (const auto& [g, docs] : groups) {
      const auto col = stats::feature_column(docs, f);
      all.insert(all.end(), col.begin(), col.end());
    }
    if (all.empty()) continue;
    const auto [lo, hi] = stats::value_range(all);
    const auto edges = stats::uniform_edges(lo, hi, bins);
    for (const auto& [g, docs] : groups) {
      stats::HistogramAccumulator acc(edges);
      for (const double v : stats::feature_column(docs, f)) acc.add(v);
      write_histogram_rows(f, g, acc.result(), out);
    }
  }
}

/// Joint histogram of two features per group over shared edges.
inline void write_joint_csv(const stats::GroupedFeatures& groups, Feature fx, Feature fy, std::size_t bins,
                            std::ostream& out) {
  out << "x_feature,y_feature,group,x_bin,y_bin,x_lo,x_hi,y_lo,y_hi,count\n";
  std::map<ManuscriptGroup, std::pair<std::vector<double>, std::vector<double>>> pairs;
  std::vector<double> xs_all, ys_all;
  for (const auto& [g, docs] : groups) {
    auto& [xs, ys] = pairs[g];
    for (const auto& d : docs) {
      const auto x = metrics::feature_value(d, fx);
      const auto y = metrics::feature_value(d, fy);
      if (!x || !y) continue;
      xs.push_back(*x);
      ys.push_back(*y);
    }
    xs_all.insert(xs_all.end(), xs.begin(), xs.end());
    ys_all.insert(ys_all.end(), ys.begin(), ys.end());
  }
  if (xs_all.empty()) return;
  const auto [xlo, xhi] = stats::value_range(xs_all);
  const auto [ylo, yhi] = stats::value_range(ys_all);
  const auto xe = stats::uniform_edges(xlo, xhi, bins);
  const auto ye = stats::uniform_edges(ylo, yhi, bins);
  for (const auto& [g, xy] : pairs) {
    stats::JointAccumulator acc(xe, ye);
    for (std::size_t k = 0; k < xy.first.size(); ++k) acc.add(xy.first[k], xy.second[k]);
    const auto jd = acc.result();
    for (std::size_t a = 0; a + 1 < xe.size(); ++a) {
      for (std::size_t b = 0; b + 1 < ye.size(); ++b) {
        out << metrics::feature_key(fx) << ',' << metrics::feature_key(fy) << ',' << ethnicity::to_string(g) << ','
            << a << ',' << b << ',' << text::format_double(xe[a]) << ',' << text::format_double(xe[a + 1]) << ','
            << text::format_double(ye[b]) << ',' << text::format_double(ye[b + 1]) << ',' << jd.at(a, b) << '\n';
      }
    }
  }
}

inline void write_binned_ttr_csv(const stats::BinnedTTR& b, std::ostream& out) {
  out << "group,bin_lo,bin_hi,count,mean,median\n";
  for (const auto& [g, row] : b.bins) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out << ethnicity::to_string(g) << ',' << b.edges[k] << ',' << b.edges[k + 1] << ',' << row[k].count << ','
          << optional_field(row[k].mean) << ',' << optional_field(row[k].median) << '\n';
    }
  }
}

inline void write_ttr_overflow_csv(const stats::BinnedTTR& b, std::ostream& out) {
  out << "group,below,above\n";
  for (const auto& [g, of] : b.overflow) out << ethnicity::to_string(g) << ',' << of.first << ',' << of.second << '\n';
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// Plain-text digest of group means and KS p-values.
inline std::string text_report(const std::map<ManuscriptGroup, stats::GroupSummary>& summary,
                               const std::optional<stats::KSMatrix>& ks) {
  std::ostringstream out;
  out << "Group means\n";
  out << "feature";
  for (const auto& [g, s] : summary) out << '\t' << ethnicity::to_string(g) << " (n=" << s.documents << ")";
  out << '\n';
  for (const auto f : metrics::kFeatures) {
    out << metrics::feature_label(f);
    for (const auto& [g, s] : summary) {
      const auto& m = s.features[static_cast<std::size_t>(f)].mean;
      out << '\t' << (m ? fixed(*m, 3) : std::string("-"));
    }
    out << '\n';
  }
  out << '\n';
  if (!ks) {
    out << "KS tests: not computed (fewer than two groups)\n";
    return out.str();
  }
  out << "KS p-values\nfeature";
  for (const auto& p : stats::kPairs) out << '\t' << stats::pair_name(p);
  out << '\n';
  for (const auto f : metrics::kFeatures) {
    out << metrics::feature_label(f);
    for (std::size_t p = 0; p < stats::kPairs.size(); ++p) {
      const auto& c = ks->at(f, p);
      out << '\t' << (c ? format_p(c->p_value) : std::string("-"));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lingcx::report
