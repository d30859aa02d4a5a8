// SPDX-License-Identifier: Apache-2.0
#pragma once

// Line-delimited JSON persistence of ArticleRecords and the removals CSV.

#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/ingest.hpp"
#include "lingcx/text.hpp"

namespace lingcx::ingest {

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson decision_to_json(const ethnicity::Decision& d) {
  return {{"kind", ethnicity::to_string(d.kind)}, {"labels", d.labels}};
}

inline ethnicity::Decision decision_from_json(const nlohmann::json& j) {
  ethnicity::Decision d;
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "single") {
    d.kind = ethnicity::DecisionKind::single;
  } else if (kind == "dual") {
    d.kind = ethnicity::DecisionKind::dual;
  } else if (kind == "unknown") {
    d.kind = ethnicity::DecisionKind::unknown;
  } else {
    throw std::invalid_argument("bad decision kind '" + kind + "'");
  }
  d.labels = j.at("labels").get<std::vector<std::string>>();
  const std::size_t want = d.kind == ethnicity::DecisionKind::single ? 1 : d.kind == ethnicity::DecisionKind::dual ? 2 : 0;
  if (d.labels.size() != want) throw std::invalid_argument("decision label count does not match kind");
  return d;
}

}  // namespace detail

inline std::string record_to_json_line(const ArticleRecord& r) {
  detail::ojson authors = detail::ojson::array();
  for (const auto& a : r.authors) {
    authors.push_back({{"full_name", a.full_name},
                       {"position_index", a.position_index},
                       {"is_first", a.is_first},
                       {"is_corresponding", a.is_corresponding}});
  }
  detail::ojson j = {{"article_id", r.article_id},
                     {"journal", r.journal},
                     {"pub_year", r.pub_year},
                     {"article_type", to_string(r.article_type)},
                     {"title", r.title},
                     {"body_text", r.body_text},
                     {"authors", std::move(authors)},
                     {"subjects", r.subjects},
                     {"word_count", r.word_count}};
  if (r.annotation) {
    j["annotation"] = {{"fa", detail::decision_to_json(r.annotation->fa)},
                       {"ca", detail::decision_to_json(r.annotation->ca)},
                       {"group", ethnicity::to_string(r.annotation->group)}};
  }
  try {
    return j.dump();
  } catch (const nlohmann::json::type_error& e) {
    throw MalformedInput(r.article_id + ": cannot serialize record: " + e.what());
  }
}

/// Parses one persisted line; `line` is used for error reporting.
inline ArticleRecord record_from_json_line(std::string_view text_line, std::size_t line) {
  try {
    const auto j = nlohmann::json::parse(text_line);
    if (!j.is_object()) throw CorruptRecord(line, "record is not a JSON object");
    ArticleRecord r;
    r.article_id = j.at("article_id").get<std::string>();
    if (r.article_id.empty()) throw CorruptRecord(line, "empty article_id");
    r.journal = j.at("journal").get<std::string>();
    r.pub_year = j.at("pub_year").get<int>();
    const auto type = j.at("article_type").get<std::string>();
    if (type == "research") {
      r.article_type = ArticleType::research;
    } else if (type == "non_research") {
      r.article_type = ArticleType::non_research;
    } else {
      throw CorruptRecord(line, "bad article_type '" + type + "'");
    }
    r.title = j.at("title").get<std::string>();
    r.body_text = j.at("body_text").get<std::string>();
    for (const auto& a : j.at("authors")) {
      AuthorRef ref;
      ref.full_name = a.at("full_name").get<std::string>();
      ref.position_index = a.at("position_index").get<std::size_t>();
      ref.is_first = a.at("is_first").get<bool>();
      ref.is_corresponding = a.at("is_corresponding").get<bool>();
      if (ref.position_index != r.authors.size() || ref.is_first != (ref.position_index == 0)) {
        throw CorruptRecord(line, "author positions are inconsistent");
      }
      r.authors.push_back(std::move(ref));
    }
    r.subjects = j.at("subjects").get<std::vector<std::string>>();
    r.word_count = j.at("word_count").get<std::size_t>();
    if (j.contains("annotation")) {
      const auto& a = j.at("annotation");
      ethnicity::Annotation ann;
      ann.fa = detail::decision_from_json(a.at("fa"));
      ann.ca = detail::decision_from_json(a.at("ca"));
      const auto g = ethnicity::parse_manuscript_group(a.at("group").get<std::string>());
      if (!g) throw CorruptRecord(line, "bad group");
      ann.group = *g;
      r.annotation = std::move(ann);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptRecord(line, e.what());
  } catch (const std::invalid_argument& e) {
    throw CorruptRecord(line, e.what());
  }
}

inline std::size_t write_corpus(std::span<const ArticleRecord> records, std::ostream& out) {
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
  return records.size();
}

inline std::size_t write_corpus(std::span<const ArticleRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write corpus " + path);
  const auto n = write_corpus(records, out);
  out.flush();
  if (!out) throw IoFailure("write failed for " + path);
  return n;
}

inline std::vector<ArticleRecord> read_corpus(std::istream& in) {
  std::vector<ArticleRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(record_from_json_line(line, lineno));
  }
  return out;
}

inline std::vector<ArticleRecord> read_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open corpus " + path);
  return read_corpus(in);
}

inline void write_removals(std::span<const RemovalEntry> removals, std::ostream& out) {
  out << "article_id,reason\n";
  for (const auto& r : removals) out << text::csv_field(r.article_id) << ',' << to_string(r.reason) << '\n';
}

inline void write_removals(std::span<const RemovalEntry> removals, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write removals " + path);
  write_removals(removals, out);
  if (!out) throw IoFailure("write failed for " + path);
}

inline std::vector<RemovalEntry> read_removals(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open removals " + path);
  std::vector<RemovalEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != "article_id,reason") throw CorruptRecord(lineno, "removals header mismatch");
      continue;
    }
    if (line.empty()) continue;
    const auto fields = text::parse_csv_line(line);
    const auto reason = fields.size() == 2 ? parse_removal_reason(fields[1]) : std::nullopt;
    if (!reason) throw CorruptRecord(lineno, "bad removal row");
    out.push_back({fields[0], *reason});
  }
  return out;
}

}  // namespace lingcx::ingest
