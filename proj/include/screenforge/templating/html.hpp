#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace screenforge::templating {

// A small, strict HTML tree. Templates are hand-authored, so instead of the
// browser's error recovery we require balanced tags (void elements excepted)
// and report the first problem with its line and column.
struct Node {
  enum class Type { element, text, comment, doctype };

  Type type = Type::text;
  std::string tag;                                         // lowercased; elements only
  std::vector<std::pair<std::string, std::string>> attrs;  // names lowercased, values decoded
  std::string text;                                        // raw source for text/comment/doctype
  bool raw_text = false;                                   // child of script/style/textarea/title
  std::vector<std::unique_ptr<Node>> children;
  int line = 0;
  int column = 0;

  bool is_element() const { return type == Type::element; }
  std::optional<std::string> attr(std::string_view name) const;
  bool has_attr(std::string_view name) const { return attr(name).has_value(); }
  void set_attr(std::string_view name, std::string value);
  void remove_attr(std::string_view name);

  std::unique_ptr<Node> clone() const;
};

struct Document {
  std::unique_ptr<Node> root;  // synthetic element with empty tag

  Document clone() const;
};

bool is_void_element(std::string_view tag);

// Throws ParseError on unbalanced or malformed markup.
Document parse_html(std::string_view source);

std::string serialize(const Document& doc);
std::string serialize(const Node& node);

// Decodes character references in text ("&amp;", "&#39;", "&#x27;", "&nbsp;").
std::string decode_entities(std::string_view text);

// Concatenated decoded text of all text descendants, as a browser's
// textContent would report it.
std::string text_content(const Node& node);

template <typename F>
void walk(Node& node, F&& f) {
  f(node);
  for (auto& child : node.children) walk(*child, f);
}

template <typename F>
void walk(const Node& node, F&& f) {
  f(node);
  for (const auto& child : node.children) walk(static_cast<const Node&>(*child), f);
}

}  // namespace screenforge::templating
