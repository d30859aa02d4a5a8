// SPDX-License-Identifier: Apache-2.0
#pragma once

// A small non-validating XML reader producing an element tree. Enough of
// XML 1.0 for journal full text: prolog, DOCTYPE (skipped, including an
// internal subset), comments, CDATA, processing instructions, attributes and
// the predefined plus numeric character references. Well-formedness errors
// (mismatched tags, stray markup, unknown entities) raise MalformedInput.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lingcx/error.hpp"
#include "lingcx/text.hpp"

namespace lingcx::xml {

struct Node {
  enum class Kind { element, text };

  Kind kind = Kind::element;
  std::string name;  // element name; empty for text nodes
  std::string text;  // text content for text nodes
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Node> children;

  bool is_element() const noexcept { return kind == Kind::element; }

  std::string_view attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return v;
    }
    return {};
  }
  bool has_attribute(std::string_view key) const {
    for (const auto& kv : attributes) {
      if (kv.first == key) return true;
    }
    return false;
  }

  /// First direct child element with the given name, or nullptr.
  const Node* child(std::string_view child_name) const {
    for (const auto& c : children) {
      if (c.is_element() && c.name == child_name) return &c;
    }
    return nullptr;
  }

  /// First descendant element (pre-order) with the given name, or nullptr.
  const Node* find(std::string_view element_name) const {
    for (const auto& c : children) {
      if (!c.is_element()) continue;
      if (c.name == element_name) return &c;
      if (const Node* hit = c.find(element_name)) return hit;
    }
    return nullptr;
  }

  /// All descendant elements with the given name, in document order. When
  /// `outermost_only` is set, matches nested inside a match are skipped.
  void find_all(std::string_view element_name, std::vector<const Node*>& out,
                bool outermost_only = false) const {
    for (const auto& c : children) {
      if (!c.is_element()) continue;
      if (c.name == element_name) {
        out.push_back(&c);
        if (outermost_only) continue;
      }
      c.find_all(element_name, out, outermost_only);
    }
  }

  /// Concatenated character data of this subtree in document order.
  std::string inner_text() const {
    std::string out;
    append_text(out);
    return out;
  }

 private:
  void append_text(std::string& out) const {
    if (!is_element()) {
      out += text;
      return;
    }
    for (const auto& c : children) c.append_text(out);
  }
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : s_(src) {}

  Node parse_document() {
    skip_misc(true);
    if (at_end() || peek() != '<') fail("expected root element");
    Node root = parse_element();
    skip_misc(false);
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedInput("xml: " + what + " at offset " + std::to_string(pos_));
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  bool starts_with(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }

  void skip_space() {
    while (!at_end() && text::is_space(peek())) ++pos_;
  }

  void skip_past(std::string_view terminator) {
    const auto hit = s_.find(terminator, pos_);
    if (hit == std::string_view::npos) fail("unterminated construct");
    pos_ = hit + terminator.size();
  }

  // Whitespace, comments and PIs around the root; DOCTYPE only before it.
  void skip_misc(bool allow_doctype) {
    for (;;) {
      skip_space();
      if (starts_with("<?")) {
        skip_past("?>");
      } else if (starts_with("<!--")) {
        skip_past("-->");
      } else if (allow_doctype && starts_with("<!DOCTYPE")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  void skip_doctype() {
    int bracket = 0;
    for (; !at_end(); ++pos_) {
      const char c = peek();
      if (c == '[') ++bracket;
      if (c == ']') --bracket;
      if (c == '>' && bracket == 0) {
        ++pos_;
        return;
      }
    }
    fail("unterminated DOCTYPE");
  }

  static bool is_name_char(char c) {
    return text::is_ascii_alnum(c) || c == '_' || c == ':' || c == '-' || c == '.' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (!at_end() && is_name_char(peek())) ++pos_;
    if (pos_ == start) fail("expected name");
    return std::string(s_.substr(start, pos_ - start));
  }

  void decode_entity(std::string& out) {
    // pos_ is on '&'
    const auto semi = s_.find(';', pos_);
    if (semi == std::string_view::npos || semi - pos_ > 12) fail("bad entity reference");
    const std::string_view ent = s_.substr(pos_ + 1, semi - pos_ - 1);
    pos_ = semi + 1;
    if (ent == "amp") {
      out += '&';
    } else if (ent == "lt") {
      out += '<';
    } else if (ent == "gt") {
      out += '>';
    } else if (ent == "quot") {
      out += '"';
    } else if (ent == "apos") {
      out += '\'';
    } else if (ent.size() > 1 && ent[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = ent[1] == 'x' || ent[1] == 'X';
      const std::string_view digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("empty character reference");
      for (const char c : digits) {
        int d = -1;
        if (c >= '0' && c <= '9') d = c - '0';
        if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
        if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
        if (d < 0) fail("bad character reference");
        cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        if (cp > 0x10FFFF) fail("character reference out of range");
      }
      if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF)) fail("invalid character reference");
      text::append_utf8(out, cp);
    } else {
      fail("unknown entity '" + std::string(ent) + "'");
    }
  }

  std::string parse_attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    const char quote = peek();
    ++pos_;
    std::string out;
    while (!at_end() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      if (peek() == '&') {
        decode_entity(out);
      } else {
        out += peek();
        ++pos_;
      }
    }
    if (at_end()) fail("unterminated attribute value");
    ++pos_;
    return out;
  }

  Node parse_element() {
    ++pos_;  // '<'
    Node node;
    node.name = parse_name();
    for (;;) {
      skip_space();
      if (at_end()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (peek() == '>') {
        ++pos_;
        break;
      }
      std::string key = parse_name();
      skip_space();
      if (at_end() || peek() != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_space();
      node.attributes.emplace_back(std::move(key), parse_attribute_value());
    }
    parse_content(node);
    return node;
  }

  void flush_text(Node& parent, std::string& pending) {
    if (pending.empty()) return;
    Node t;
    t.kind = Node::Kind::text;
    t.text = std::move(pending);
    parent.children.push_back(std::move(t));
    pending.clear();
  }

  void parse_content(Node& parent) {
    std::string pending;
    while (!at_end()) {
      const char c = peek();
      if (c == '<') {
        if (starts_with("</")) {
          flush_text(parent, pending);
          pos_ += 2;
          const std::string closing = parse_name();
          if (closing != parent.name) fail("mismatched end tag </" + closing + "> for <" + parent.name + ">");
          skip_space();
          if (at_end() || peek() != '>') fail("malformed end tag");
          ++pos_;
          return;
        }
        if (starts_with("<!--")) {
          skip_past("-->");
        } else if (starts_with("<![CDATA[")) {
          pos_ += 9;
          const auto end = s_.find("]]>", pos_);
          if (end == std::string_view::npos) fail("unterminated CDATA");
          pending.append(s_.substr(pos_, end - pos_));
          pos_ = end + 3;
        } else if (starts_with("<?")) {
          skip_past("?>");
        } else if (starts_with("<!")) {
          fail("unexpected declaration in content");
        } else {
          flush_text(parent, pending);
          parent.children.push_back(parse_element());
        }
      } else if (c == '&') {
        decode_entity(pending);
      } else {
        pending += c;
        ++pos_;
      }
    }
    fail("missing end tag for <" + parent.name + ">");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a complete XML document and returns its root element.
inline Node parse(std::string_view source) { return detail::Parser(source).parse_document(); }

}  // namespace lingcx::xml
