// SPDX-License-Identifier: Apache-2.0
#pragma once

// Article ingestion: JATS-subset XML, plain text with a header block, and
// JSONL records become ArticleRecords; the corpus filters drop non-research
// articles and articles without a corresponding author.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lingcx/abbreviations.hpp"
#include "lingcx/error.hpp"
#include "lingcx/ethnicity.hpp"
#include "lingcx/nlp/analyze.hpp"
#include "lingcx/text.hpp"
#include "lingcx/xml.hpp"

namespace lingcx::ingest {

enum class SourceFormat { jats_xml, plain_text, jsonl_record };

inline std::optional<SourceFormat> parse_source_format(std::string_view s) {
  if (s == "xml" || s == "jats_xml") return SourceFormat::jats_xml;
  if (s == "text" || s == "plain_text") return SourceFormat::plain_text;
  if (s == "jsonl" || s == "jsonl_record") return SourceFormat::jsonl_record;
  return std::nullopt;
}

struct RawArticle {
  std::string article_id;
  std::string source_bytes;
  SourceFormat source_format = SourceFormat::jats_xml;
};

struct AuthorRef {
  std::string full_name;
  std::size_t position_index = 0;
  bool is_first = false;
  bool is_corresponding = false;
  friend bool operator==(const AuthorRef&, const AuthorRef&) = default;
};

enum class ArticleType { research, non_research };

inline std::string_view to_string(ArticleType t) { return t == ArticleType::research ? "research" : "non_research"; }

struct ArticleRecord {
  std::string article_id;
  std::string journal;
  int pub_year = 0;
  ArticleType article_type = ArticleType::research;
  std::string title;
  std::string body_text;
  std::vector<AuthorRef> authors;
  std::vector<std::string> subjects;
  std::size_t word_count = 0;
  std::optional<ethnicity::Annotation> annotation;

  friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

enum class RemovalReason { non_research, no_corresponding_author, unknown_ethnicity };

inline std::string_view to_string(RemovalReason r) {
  switch (r) {
    case RemovalReason::non_research: return "non_research";
    case RemovalReason::no_corresponding_author: return "no_corresponding_author";
    case RemovalReason::unknown_ethnicity: return "unknown_ethnicity";
  }
  return "unknown_ethnicity";
}

inline std::optional<RemovalReason> parse_removal_reason(std::string_view s) {
  if (s == "non_research") return RemovalReason::non_research;
  if (s == "no_corresponding_author") return RemovalReason::no_corresponding_author;
  if (s == "unknown_ethnicity") return RemovalReason::unknown_ethnicity;
  return std::nullopt;
}

struct RemovalEntry {
  std::string article_id;
  RemovalReason reason = RemovalReason::non_research;
  friend bool operator==(const RemovalEntry&, const RemovalEntry&) = default;
};

/// First-listed corresponding author, or nullptr.
inline const AuthorRef* corresponding_author(const ArticleRecord& r) {
  for (const auto& a : r.authors) {
    if (a.is_corresponding) return &a;
  }
  return nullptr;
}

inline const AuthorRef* first_author(const ArticleRecord& r) { return r.authors.empty() ? nullptr : &r.authors[0]; }

namespace detail {

inline void number_authors(std::vector<AuthorRef>& authors) {
  for (std::size_t i = 0; i < authors.size(); ++i) {
    authors[i].position_index = i;
    authors[i].is_first = i == 0;
  }
}

inline ArticleType article_type_from(std::string_view raw) {
  const std::string t = text::ascii_lower(text::trim(raw));
  if (t.empty() || t == "research" || t == "research-article" || t == "research_article") {
    return ArticleType::research;
  }
  return ArticleType::non_research;
}

/// Removes <...> markup runs (a '<' followed by a letter, '/', '!' or '?').
inline std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && i + 1 < s.size()) {
      const char n = s[i + 1];
      const bool markup = (n >= 'a' && n <= 'z') || (n >= 'A' && n <= 'Z') || n == '/' || n == '!' || n == '?';
      const auto close = s.find('>', i + 1);
      if (markup && close != std::string_view::npos) {
        out += ' ';
        i = close + 1;
        continue;
      }
    }
    out += s[i++];
  }
  return out;
}

inline std::string node_text(const xml::Node* n) { return n ? text::collapse_whitespace(n->inner_text()) : ""; }

inline std::string contrib_name(const xml::Node& contrib) {
  if (const auto* name = contrib.find("name")) {
    const std::string given = node_text(name->child("given-names"));
    const std::string surname = node_text(name->child("surname"));
    if (given.empty()) return surname;
    if (surname.empty()) return given;
    return given + " " + surname;
  }
  if (const auto* s = contrib.find("string-name")) return node_text(s);
  if (const auto* c = contrib.find("collab")) return node_text(c);
  return {};
}

inline bool contrib_is_corresponding(const xml::Node& contrib) {
  const std::string corresp = text::ascii_lower(contrib.attribute("corresp"));
  if (corresp == "yes" || corresp == "true" || corresp == "1") return true;
  std::vector<const xml::Node*> xrefs;
  contrib.find_all("xref", xrefs);
  for (const auto* x : xrefs) {
    if (x->attribute("ref-type") == "corresp") return true;
  }
  return false;
}

inline ArticleRecord parse_jats(const RawArticle& raw) {
  const xml::Node root = xml::parse(raw.source_bytes);
  if (root.name != "article") throw MalformedInput("root element is <" + root.name + ">, expected <article>");

  ArticleRecord rec;
  rec.article_id = raw.article_id;
  rec.article_type = article_type_from(root.attribute("article-type"));
  rec.journal = node_text(root.find("journal-title"));
  rec.title = node_text(root.find("article-title"));
  if (const auto* date = root.find("pub-date")) {
    const std::string y = node_text(date->child("year"));
    if (!y.empty()) {
      const auto v = text::parse_double(y);
      if (!v || *v != static_cast<double>(static_cast<int>(*v))) throw MalformedInput("bad <year> '" + y + "'");
      rec.pub_year = static_cast<int>(*v);
    }
  }

  const xml::Node* meta = root.find("article-meta");
  const xml::Node& scope = meta ? *meta : root;
  std::vector<const xml::Node*> contribs;
  scope.find_all("contrib", contribs);
  for (const auto* c : contribs) {
    const auto type = c->attribute("contrib-type");
    if (!type.empty() && type != "author") continue;
    AuthorRef a;
    a.full_name = contrib_name(*c);
    if (a.full_name.empty()) continue;
    a.is_corresponding = contrib_is_corresponding(*c);
    rec.authors.push_back(std::move(a));
  }
  number_authors(rec.authors);

  if (const auto* cats = scope.find("article-categories")) {
    std::vector<const xml::Node*> subjects;
    cats->find_all("subject", subjects);
    for (const auto* s : subjects) {
      std::string v = node_text(s);
      if (!v.empty()) rec.subjects.push_back(std::move(v));
    }
  }

  const xml::Node* body = root.find("body");
  std::vector<const xml::Node*> paragraphs;
  (body ? *body : root).find_all("p", paragraphs, true);
  for (const auto* p : paragraphs) {
    const std::string t = node_text(p);
    if (t.empty()) continue;
    if (!rec.body_text.empty()) rec.body_text += ' ';
    rec.body_text += t;
  }
  return rec;
}

// Header keys recognised at the top of a plain-text article.
inline bool is_header_key(std::string_view k) {
  return k == "Title" || k == "Journal" || k == "Year" || k == "Type" || k == "Author" || k == "Corresponding" ||
         k == "Subject";
}

inline ArticleRecord parse_plain(const RawArticle& raw) {
  ArticleRecord rec;
  rec.article_id = raw.article_id;
  const std::string_view src = raw.source_bytes;
  std::vector<std::string> corresponding;

  std::size_t pos = 0;
  while (pos < src.size()) {
    auto eol = src.find('\n', pos);
    if (eol == std::string_view::npos) eol = src.size();
    const std::string_view line = text::trim(src.substr(pos, eol - pos));
    const auto colon = line.find(':');
    if (line.empty() || colon == std::string_view::npos || !is_header_key(line.substr(0, colon))) break;
    const std::string_view key = line.substr(0, colon);
    const std::string value = text::collapse_whitespace(line.substr(colon + 1));
    if (key == "Title") {
      rec.title = value;
    } else if (key == "Journal") {
      rec.journal = value;
    } else if (key == "Year") {
      const auto v = text::parse_double(value);
      if (!v || *v != static_cast<double>(static_cast<int>(*v))) throw MalformedInput("bad Year '" + value + "'");
      rec.pub_year = static_cast<int>(*v);
    } else if (key == "Type") {
      rec.article_type = article_type_from(value);
    } else if (key == "Author") {
      rec.authors.push_back({value, 0, false, false});
    } else if (key == "Corresponding") {
      corresponding.push_back(value);
    } else {
      rec.subjects.push_back(value);
    }
    pos = eol + 1;
  }
  for (const auto& name : corresponding) {
    bool found = false;
    for (auto& a : rec.authors) {
      if (a.full_name == name) a.is_corresponding = found = true;
    }
    if (!found) rec.authors.push_back({name, 0, false, true});
  }
  number_authors(rec.authors);
  if (pos < src.size()) rec.body_text = text::collapse_whitespace(strip_tags(src.substr(pos)));
  return rec;
}

inline ArticleRecord parse_jsonl(const RawArticle& raw) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw.source_bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw MalformedInput(std::string("bad JSON record: ") + e.what());
  }
  if (!j.is_object()) throw MalformedInput("JSON record is not an object");
  try {
    ArticleRecord rec;
    rec.article_id = j.value("article_id", raw.article_id);
    rec.journal = j.value("journal", std::string());
    rec.pub_year = j.value("pub_year", 0);
    rec.article_type = article_type_from(j.value("article_type", std::string()));
    rec.title = text::collapse_whitespace(j.value("title", std::string()));
    if (j.contains("authors")) {
      for (const auto& a : j.at("authors")) {
        AuthorRef ref;
        ref.full_name = text::collapse_whitespace(a.is_string() ? a.get<std::string>() : a.at("name").get<std::string>());
        ref.is_corresponding = a.is_object() && a.value("corresponding", false);
        rec.authors.push_back(std::move(ref));
      }
    }
    number_authors(rec.authors);
    if (j.contains("subjects")) rec.subjects = j.at("subjects").get<std::vector<std::string>>();
    std::vector<std::string> paragraphs;
    if (j.contains("paragraphs")) paragraphs = j.at("paragraphs").get<std::vector<std::string>>();
    if (j.contains("body")) paragraphs.push_back(j.at("body").get<std::string>());
    for (const auto& p : paragraphs) {
      const std::string t = text::collapse_whitespace(strip_tags(p));
      if (t.empty()) continue;
      if (!rec.body_text.empty()) rec.body_text += ' ';
      rec.body_text += t;
    }
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("JSON record has wrong field types: ") + e.what());
  }
}

}  // namespace detail

/// Extracts one article. Body text is the paragraph text in document order,
/// whitespace-collapsed and joined by single spaces.
inline ArticleRecord parse_article(const RawArticle& raw) {
  if (!text::is_valid_utf8(raw.source_bytes)) throw MalformedInput(raw.article_id + ": source is not valid UTF-8");
  ArticleRecord rec;
  switch (raw.source_format) {
    case SourceFormat::jats_xml: rec = detail::parse_jats(raw); break;
    case SourceFormat::plain_text: rec = detail::parse_plain(raw); break;
    case SourceFormat::jsonl_record: rec = detail::parse_jsonl(raw); break;
  }
  if (rec.article_id.empty()) throw MalformedInput("article has no identifier");
  if (rec.body_text.empty()) throw MissingBody(rec.article_id + ": no paragraph content");
  return rec;
}

/// Expands abbreviations in the body and records its word-token count.
inline void finalize_record(ArticleRecord& rec, const AbbreviationTable& table) {
  rec.body_text = normalize_abbreviations(rec.body_text, table);
  rec.word_count = nlp::count_words(rec.body_text, table);
}

struct FilterResult {
  std::vector<ArticleRecord> kept;
  std::vector<RemovalEntry> removed;
};

/// Removes non-research articles, then articles without a corresponding
/// author. Order is preserved in both outputs.
inline FilterResult filter_corpus(std::vector<ArticleRecord> records) {
  FilterResult out;
  for (auto& r : records) {
    if (r.article_type == ArticleType::non_research) {
      out.removed.push_back({r.article_id, RemovalReason::non_research});
    } else if (corresponding_author(r) == nullptr) {
      out.removed.push_back({r.article_id, RemovalReason::no_corresponding_author});
    } else {
      out.kept.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace lingcx::ingest
