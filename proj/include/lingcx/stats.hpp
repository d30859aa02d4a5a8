// SPDX-License-Identifier: Apache-2.0
#pragma once

// Group comparison statistics: two-sample Kolmogorov-Smirnov tests, uniform
// histograms, joint histograms, TTR binned by article length and per-group
// summaries. Histogram and summary accumulators merge associatively, and a
// merged accumulator finalizes to exactly the same numbers as a single one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/metrics.hpp"

namespace lingcx::stats {

using ethnicity::ManuscriptGroup;
using metrics::Feature;
using metrics::FeatureVector;

// ---------------------------------------------------------------- KS test

struct KSResult {
  double d_statistic = 0;
  double p_value = 1;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  friend bool operator==(const KSResult&, const KSResult&) = default;
};

inline constexpr double kSeriesCutoff = 1e-12;
inline constexpr double kSmallLambda = 0.2;

/// Q_KS(lambda) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2), summed until a
/// term falls below 1e-12 and clamped to [0, 1]. Below lambda = 0.2 the value
/// is 1 to within 1e-12 and the series converges too slowly, so 1 is returned.
inline double kolmogorov_q(double lambda) {
  if (!(lambda >= kSmallLambda)) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 100000; ++k) {
    const double kk = static_cast<double>(k);
    const double term = std::exp(-2.0 * kk * kk * lambda * lambda);
    sum += sign * term;
    if (term < kSeriesCutoff) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Asymptotic p-value for statistic d with sample sizes n1, n2.
inline double ks_p_value(double d, std::size_t n1, std::size_t n2) {
  if (d <= 0.0) return 1.0;
  const double ne = static_cast<double>(n1) * static_cast<double>(n2) / static_cast<double>(n1 + n2);
  const double root = std::sqrt(ne);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

namespace detail {

inline std::vector<double> checked_sorted(std::span<const double> xs) {
  if (xs.empty()) throw EmptySample("KS test needs a non-empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  for (const double x : v) {
    if (!std::isfinite(x)) throw NonFiniteValue("KS test sample contains a non-finite value");
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

/// Exact D by a sorted-merge sweep: at each distinct value both ECDFs are
/// advanced past all ties before the gap |i/n1 - j/n2| is measured. The gap is
/// kept as the integer |i*n2 - j*n1| and divided once.
inline KSResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  const auto a = detail::checked_sorted(xs);
  const auto b = detail::checked_sorted(ys);
  const std::uint64_t n1 = a.size();
  const std::uint64_t n2 = b.size();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t best = 0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    const std::uint64_t lhs = i * n2;
    const std::uint64_t rhs = j * n1;
    best = std::max(best, lhs > rhs ? lhs - rhs : rhs - lhs);
  }
  // once one sample is exhausted the gap only shrinks
  KSResult r;
  r.n1 = a.size();
  r.n2 = b.size();
  r.d_statistic = static_cast<double>(best) / static_cast<double>(n1 * n2);
  r.p_value = ks_p_value(r.d_statistic, r.n1, r.n2);
  return r;
}

// ---------------------------------------------------------------- grouping

/// Documents of one group reduced to their feature vectors.
using GroupedFeatures = std::map<ManuscriptGroup, std::vector<FeatureVector>>;

/// Present values of one feature across a group's documents.
inline std::vector<double> feature_column(std::span<const FeatureVector> docs, Feature f) {
  std::vector<double> out;
  out.reserve(docs.size());
  for (const auto& d : docs) {
    if (const auto v = metrics::feature_value(d, f)) out.push_back(*v);
  }
  return out;
}

using GroupPair = std::pair<ManuscriptGroup, ManuscriptGroup>;

inline constexpr std::array<GroupPair, 3> kPairs = {GroupPair{ManuscriptGroup::A, ManuscriptGroup::B},
                                                    GroupPair{ManuscriptGroup::A, ManuscriptGroup::AB},
                                                    GroupPair{ManuscriptGroup::AB, ManuscriptGroup::B}};

inline std::string pair_name(const GroupPair& p) {
  return "(" + std::string(ethnicity::to_string(p.first)) + "," + std::string(ethnicity::to_string(p.second)) + ")";
}

/// 11 x 3 table of KS results; a cell is empty when either side has no values.
struct KSMatrix {
  std::array<std::array<std::optional<KSResult>, 3>, metrics::kFeatureCount> cells{};

  const std::optional<KSResult>& at(Feature f, std::size_t pair) const {
    return cells[static_cast<std::size_t>(f)][pair];
  }
};

inline KSMatrix ks_matrix(const GroupedFeatures& groups) {
  KSMatrix m;
  static const std::vector<FeatureVector> none;
  auto docs = [&](ManuscriptGroup g) -> const std::vector<FeatureVector>& {
    const auto it = groups.find(g);
    return it == groups.end() ? none : it->second;
  };
  for (const auto f : metrics::kFeatures) {
    for (std::size_t p = 0; p < kPairs.size(); ++p) {
      const auto xs = feature_column(docs(kPairs[p].first), f);
      const auto ys = feature_column(docs(kPairs[p].second), f);
      try {
        m.cells[static_cast<std::size_t>(f)][p] = ks_two_sample(xs, ys);
      } catch (const EmptySample&) {
        m.cells[static_cast<std::size_t>(f)][p] = std::nullopt;
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------- histograms

struct Histogram {
  std::vector<double> edges;  // bin_count + 1, strictly increasing
  std::vector<std::size_t> counts;
  std::size_t n = 0;

  std::vector<double> density() const {
    std::vector<double> out(counts.size(), 0.0);
    if (n == 0) return out;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      out[k] = static_cast<double>(counts[k]) / (static_cast<double>(n) * (edges[k + 1] - edges[k]));
    }
    return out;
  }
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// `bins` uniform edges over [lo, hi]. A degenerate range is widened to [lo, lo + 1].
inline std::vector<double> uniform_edges(double lo, double hi, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("bin count must be positive");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw NonFiniteValue("histogram range is not finite");
  if (hi < lo) std::swap(lo, hi);
  if (hi == lo) hi = lo + 1.0;
  std::vector<double> edges(bins + 1);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k) edges[k] = lo + static_cast<double>(k) * w;
  edges[bins] = hi;
  return edges;
}

/// Bin of `v` for right-open bins whose last bin is closed; nullopt outside.
inline std::optional<std::size_t> bin_index(std::span<const double> edges, double v) {
  const std::size_t bins = edges.size() - 1;
  if (!(v >= edges.front() && v <= edges.back())) return std::nullopt;
  const auto it = std::upper_bound(edges.begin(), edges.end(), v);
  const auto k = static_cast<std::size_t>(it - edges.begin());
  return k == 0 ? 0 : std::min(k - 1, bins - 1);
}

class HistogramAccumulator {
 public:
  explicit HistogramAccumulator(std::vector<double> edges)
      : edges_(std::move(edges)), counts_(edges_.size() - 1, 0) {}

  void add(double v) {
    if (!std::isfinite(v)) throw NonFiniteValue("histogram value is not finite");
    const auto k = bin_index(edges_, v);
    if (k) {
      ++counts_[*k];
      ++n_;
    } else {
      ++outside_;
    }
  }

  void merge(const HistogramAccumulator& other) {
    if (other.edges_ != edges_) throw std::invalid_argument("cannot merge histograms with different edges");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    n_ += other.n_;
    outside_ += other.outside_;
  }

  Histogram result() const { return {edges_, counts_, n_}; }
  std::size_t outside() const noexcept { return outside_; }

 private:
  std::vector<double> edges_;
  std::vector<std::size_t> counts_;
  std::size_t n_ = 0;
  std::size_t outside_ = 0;
};

inline std::pair<double, double> value_range(std::span<const double> values) {
  if (values.empty()) throw EmptySample("histogram needs at least one value");
  for (const double v : values) {
    if (!std::isfinite(v)) throw NonFiniteValue("histogram value is not finite");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi};
}

/// Uniform bins spanning [min, max] of the values.
inline Histogram histogram(std::span<const double> values, std::size_t bins) {
  const auto [lo, hi] = value_range(values);
  HistogramAccumulator acc(uniform_edges(lo, hi, bins));
  for (const double v : values) acc.add(v);
  return acc.result();
}

/// Bins of the given width starting at min; the last bin reaches max.
inline Histogram histogram_by_width(std::span<const double> values, double width) {
  if (!(width > 0)) throw std::invalid_argument("bin width must be positive");
  const auto [lo, hi] = value_range(values);
  const auto bins = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k) edges[k] = lo + static_cast<double>(k) * width;
  HistogramAccumulator acc(std::move(edges));
  for (const double v : values) acc.add(v);
  return acc.result();
}

struct JointDensity {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<std::size_t> counts;  // row-major: x bin major, y bin minor
  std::size_t n = 0;

  std::size_t at(std::size_t xb, std::size_t yb) const { return counts[xb * (y_edges.size() - 1) + yb]; }
  friend bool operator==(const JointDensity&, const JointDensity&) = default;
};

class JointAccumulator {
 public:
  JointAccumulator(std::vector<double> x_edges, std::vector<double> y_edges)
      : x_(std::move(x_edges)), y_(std::move(y_edges)), counts_((x_.size() - 1) * (y_.size() - 1), 0) {}

  void add(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw NonFiniteValue("joint histogram value is not finite");
    const auto xb = bin_index(x_, x);
    const auto yb = bin_index(y_, y);
    if (!xb || !yb) {
      ++outside_;
      return;
    }
    ++counts_[*xb * (y_.size() - 1) + *yb];
    ++n_;
  }

  void merge(const JointAccumulator& other) {
    if (other.x_ != x_ || other.y_ != y_) throw std::invalid_argument("cannot merge joint histograms with different edges");
    for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
    n_ += other.n_;
    outside_ += other.outside_;
  }

  JointDensity result() const { return {x_, y_, counts_, n_}; }
  std::size_t outside() const noexcept { return outside_; }

 private:
  std::vector<double> x_, y_;
  std::vector<std::size_t> counts_;
  std::size_t n_ = 0;
  std::size_t outside_ = 0;
};

inline JointDensity joint_histogram(std::span<const double> xs, std::span<const double> ys, std::size_t x_bins,
                                    std::size_t y_bins) {
  if (xs.size() != ys.size()) throw std::invalid_argument("joint histogram needs paired samples");
  const auto [xlo, xhi] = value_range(xs);
  const auto [ylo, yhi] = value_range(ys);
  JointAccumulator acc(uniform_edges(xlo, xhi, x_bins), uniform_edges(ylo, yhi, y_bins));
  for (std::size_t k = 0; k < xs.size(); ++k) acc.add(xs[k], ys[k]);
  return acc.result();
}

// ---------------------------------------------------------------- summaries

struct Summary {
  std::size_t n = 0;
  std::size_t excluded = 0;
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> std_dev;  // sample standard deviation (n - 1); 0 when n = 1
  friend bool operator==(const Summary&, const Summary&) = default;
};

/// Keeps the values themselves so that results do not depend on the order
/// in which partial accumulators were merged.
class SummaryAccumulator {
 public:
  void add(std::optional<double> v) {
    if (!v) {
      ++excluded_;
      return;
    }
    if (!std::isfinite(*v)) throw NonFiniteValue("summary value is not finite");
    values_.push_back(*v);
  }

  void merge(const SummaryAccumulator& other) {
    values_.insert(values_.end(), other.values_.begin(), other.values_.end());
    excluded_ += other.excluded_;
  }

  Summary result() const {
    Summary s;
    s.n = values_.size();
    s.excluded = excluded_;
    if (values_.empty()) return s;
    std::vector<double> v = values_;
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double sum = 0.0;
    for (const double x : v) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (const double x : v) ss += (x - mean) * (x - mean);
    s.mean = mean;
    const std::size_t mid = v.size() / 2;
    s.median = v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
    s.std_dev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return s;
  }

 private:
  std::vector<double> values_;
  std::size_t excluded_ = 0;
};

struct GroupSummary {
  std::size_t documents = 0;
  std::array<Summary, metrics::kFeatureCount> features{};
  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

class GroupSummaryAccumulator {
 public:
  void add(const FeatureVector& v) {
    ++documents_;
    for (const auto f : metrics::kFeatures) acc_[static_cast<std::size_t>(f)].add(metrics::feature_value(v, f));
  }
  void merge(const GroupSummaryAccumulator& other) {
    documents_ += other.documents_;
    for (std::size_t k = 0; k < acc_.size(); ++k) acc_[k].merge(other.acc_[k]);
  }
  GroupSummary result() const {
    GroupSummary g;
    g.documents = documents_;
    for (std::size_t k = 0; k < acc_.size(); ++k) g.features[k] = acc_[k].result();
    return g;
  }

 private:
  std::size_t documents_ = 0;
  std::array<SummaryAccumulator, metrics::kFeatureCount> acc_{};
};

/// Per-group mean, median, std and n for every feature; absent values are
/// excluded and counted. Throws EmptyGroup for a group without documents.
inline std::map<ManuscriptGroup, GroupSummary> group_summary(const GroupedFeatures& groups) {
  std::map<ManuscriptGroup, GroupSummary> out;
  for (const auto& [g, docs] : groups) {
    if (docs.empty()) throw EmptyGroup("group " + std::string(ethnicity::to_string(g)) + " has no documents");
    GroupSummaryAccumulator acc;
    for (const auto& d : docs) acc.add(d);
    out.emplace(g, acc.result());
  }
  return out;
}

// ---------------------------------------------------------------- TTR by length

struct LengthDoc {
  ManuscriptGroup group = ManuscriptGroup::A;
  double ttr = 0;
  std::size_t word_count = 0;
};

struct TTRBin {
  std::size_t count = 0;
  std::optional<double> mean;
  std::optional<double> median;
  friend bool operator==(const TTRBin&, const TTRBin&) = default;
};

struct BinnedTTR {
  std::vector<std::size_t> edges;  // word-count edges, bins are [edges[k], edges[k+1])
  std::map<ManuscriptGroup, std::vector<TTRBin>> bins;
  std::map<ManuscriptGroup, std::pair<std::size_t, std::size_t>> overflow;  // (below, at or above)
  friend bool operator==(const BinnedTTR&, const BinnedTTR&) = default;
};

/// Buckets documents by word count into [lo + k*w, lo + (k+1)*w) over [lo, hi).
inline BinnedTTR ttr_by_length(std::span<const LengthDoc> docs, std::size_t bin_width, std::size_t lo, std::size_t hi) {
  if (bin_width == 0) throw std::invalid_argument("bin width must be positive");
  if (hi <= lo) throw std::invalid_argument("length range is empty");
  BinnedTTR out;
  const std::size_t nbins = (hi - lo + bin_width - 1) / bin_width;
  for (std::size_t k = 0; k <= nbins; ++k) out.edges.push_back(std::min(lo + k * bin_width, hi));
  std::map<ManuscriptGroup, std::vector<std::vector<double>>> values;
  for (const auto& d : docs) {
    auto& slot = values[d.group];
    slot.resize(nbins);
    auto& of = out.overflow[d.group];
    if (d.word_count < lo) {
      ++of.first;
    } else if (d.word_count >= hi) {
      ++of.second;
    } else {
      slot[(d.word_count - lo) / bin_width].push_back(d.ttr);
    }
  }
  for (auto& [g, per_bin] : values) {
    auto& row = out.bins[g];
    row.resize(nbins);
    for (std::size_t k = 0; k < nbins; ++k) {
      SummaryAccumulator acc;
      for (const double v : per_bin[k]) acc.add(v);
      const auto s = acc.result();
      row[k] = {s.n, s.mean, s.median};
    }
  }
  return out;
}

}  // namespace lingcx::stats
