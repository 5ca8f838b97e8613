#include "screenforge/templating/html.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "screenforge/error.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::templating {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_raw_text_element(std::string_view tag) { return tag == "script" || tag == "style"; }
bool is_rcdata_element(std::string_view tag) { return tag == "textarea" || tag == "title"; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts_.push_back(i + 1);
  }

  Document run() {
    Document doc;
    doc.root = std::make_unique<Node>();
    doc.root->type = Node::Type::element;
    std::vector<Node*> stack{doc.root.get()};
    while (pos_ < src_.size()) {
      if (src_[pos_] == '<') {
        if (starts("<!--")) {
          comment(*stack.back());
          continue;
        }
        if (starts("<!")) {
          doctype(*stack.back());
          continue;
        }
        if (starts("</")) {
          end_tag(stack);
          continue;
        }
        if (pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
          start_tag(stack);
          continue;
        }
      }
      text(*stack.back());
    }
    if (stack.size() > 1) {
      const Node& open = *stack.back();
      throw ParseError("unclosed <" + open.tag + ">", open.line, open.column);
    }
    return doc;
  }

 private:
  bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  std::pair<int, int> where(std::size_t offset) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
    const auto line = static_cast<int>(it - line_starts_.begin());
    return {line, static_cast<int>(offset - *(it - 1)) + 1};
  }

  [[noreturn]] void fail(const std::string& what, std::size_t offset) const {
    auto [line, col] = where(offset);
    throw ParseError(what, line, col);
  }

  Node& add(Node& parent, Node::Type type, std::size_t offset) {
    auto node = std::make_unique<Node>();
    node->type = type;
    std::tie(node->line, node->column) = where(offset);
    parent.children.push_back(std::move(node));
    return *parent.children.back();
  }

  void text(Node& parent) {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != '<') ++pos_;
    if (!parent.children.empty() && parent.children.back()->type == Node::Type::text) {
      parent.children.back()->text.append(src_.substr(start, pos_ - start));
      return;
    }
    add(parent, Node::Type::text, start).text = std::string(src_.substr(start, pos_ - start));
  }

  void comment(Node& parent) {
    const std::size_t start = pos_;
    const auto end = src_.find("-->", pos_ + 4);
    if (end == std::string_view::npos) fail("unterminated comment", start);
    add(parent, Node::Type::comment, start).text = std::string(src_.substr(start + 4, end - start - 4));
    pos_ = end + 3;
  }

  void doctype(Node& parent) {
    const std::size_t start = pos_;
    const auto end = src_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated declaration", start);
    add(parent, Node::Type::doctype, start).text = std::string(src_.substr(start + 2, end - start - 2));
    pos_ = end + 1;
  }

  std::string name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '/' || c == '>' || c == '=' || c == '<') break;
      ++pos_;
    }
    return lower(src_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  void end_tag(std::vector<Node*>& stack) {
    const std::size_t start = pos_;
    pos_ += 2;
    const std::string tag = name();
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != '>') fail("malformed end tag </" + tag + ">", start);
    ++pos_;
    if (stack.size() == 1) fail("stray </" + tag + ">", start);
    if (stack.back()->tag != tag) {
      fail("unexpected </" + tag + ">, expected </" + stack.back()->tag + "> (opened at line " +
               std::to_string(stack.back()->line) + ")",
           start);
    }
    stack.pop_back();
  }

  void start_tag(std::vector<Node*>& stack) {
    const std::size_t start = pos_;
    ++pos_;
    Node& el = add(*stack.back(), Node::Type::element, start);
    el.tag = name();
    bool self_closing = false;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) fail("unterminated <" + el.tag + "> tag", start);
      const char c = src_[pos_];
      if (c == '>') {
        ++pos_;
        break;
      }
      if (c == '/') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
          self_closing = true;
          pos_ += 2;
          break;
        }
        fail("stray '/' in <" + el.tag + ">", pos_);
      }
      const std::size_t attr_at = pos_;
      std::string key = name();
      if (key.empty()) fail("malformed attribute in <" + el.tag + ">", attr_at);
      skip_space();
      std::string value;
      if (pos_ < src_.size() && src_[pos_] == '=') {
        ++pos_;
        skip_space();
        if (pos_ >= src_.size()) fail("unterminated <" + el.tag + "> tag", start);
        const char q = src_[pos_];
        if (q == '"' || q == '\'') {
          const auto end = src_.find(q, pos_ + 1);
          if (end == std::string_view::npos) fail("unterminated attribute value", pos_);
          value = decode_entities(src_.substr(pos_ + 1, end - pos_ - 1));
          pos_ = end + 1;
        } else {
          const std::size_t v0 = pos_;
          while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != '>') ++pos_;
          value = decode_entities(src_.substr(v0, pos_ - v0));
        }
      }
      if (el.has_attr(key)) fail("duplicate attribute '" + key + "' on <" + el.tag + ">", attr_at);
      el.attrs.emplace_back(std::move(key), std::move(value));
    }
    if (is_void_element(el.tag)) return;
    if (self_closing) fail("self-closing syntax on non-void <" + el.tag + ">", start);
    if (is_raw_text_element(el.tag) || is_rcdata_element(el.tag)) {
      const std::string close = "</" + el.tag;
      std::size_t end = pos_;
      while (true) {
        end = src_.find("</", end);
        if (end == std::string_view::npos) fail("unclosed <" + el.tag + ">", start);
        if (lower(src_.substr(end, close.size())) == close) break;
        end += 2;
      }
      if (end > pos_) {
        Node& t = add(el, Node::Type::text, pos_);
        t.text = std::string(src_.substr(pos_, end - pos_));
        t.raw_text = is_raw_text_element(el.tag);
      }
      pos_ = end;
      stack.push_back(&el);
      end_tag(stack);
      return;
    }
    stack.push_back(&el);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> line_starts_;
};

void serialize_into(const Node& node, std::string& out) {
  switch (node.type) {
    case Node::Type::text:
      out += node.text;
      return;
    case Node::Type::comment:
      out += "<!--" + node.text + "-->";
      return;
    case Node::Type::doctype:
      out += "<!" + node.text + ">";
      return;
    case Node::Type::element:
      break;
  }
  if (!node.tag.empty()) {
    out += "<" + node.tag;
    for (const auto& [k, v] : node.attrs) {
      out += " " + k + "=\"" + html_escape(v, true) + "\"";
    }
    out += ">";
    if (is_void_element(node.tag)) return;
  }
  for (const auto& child : node.children) serialize_into(*child, out);
  if (!node.tag.empty()) out += "</" + node.tag + ">";
}

void text_into(const Node& node, std::string& out) {
  if (node.type == Node::Type::text) {
    out += node.raw_text ? node.text : decode_entities(node.text);
    return;
  }
  for (const auto& child : node.children) text_into(*child, out);
}

}  // namespace

std::optional<std::string> Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs)
    if (k == name) return v;
  return std::nullopt;
}

void Node::set_attr(std::string_view name, std::string value) {
  for (auto& [k, v] : attrs) {
    if (k == name) {
      v = std::move(value);
      return;
    }
  }
  attrs.emplace_back(std::string(name), std::move(value));
}

void Node::remove_attr(std::string_view name) {
  std::erase_if(attrs, [&](const auto& kv) { return kv.first == name; });
}

std::unique_ptr<Node> Node::clone() const {
  auto copy = std::make_unique<Node>();
  copy->type = type;
  copy->tag = tag;
  copy->attrs = attrs;
  copy->text = text;
  copy->raw_text = raw_text;
  copy->line = line;
  copy->column = column;
  for (const auto& child : children) copy->children.push_back(child->clone());
  return copy;
}

Document Document::clone() const { return Document{root ? root->clone() : nullptr}; }

bool is_void_element(std::string_view tag) {
  static const std::set<std::string_view> voids = {"area",  "base", "br",   "col",   "embed",  "hr",    "img",
                                                   "input", "link", "meta", "param", "source", "track", "wbr"};
  return voids.count(tag) > 0;
}

Document parse_html(std::string_view source) { return Parser(source).run(); }

std::string serialize(const Document& doc) { return serialize(*doc.root); }

std::string serialize(const Node& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

std::string decode_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '&') {
      out.push_back(text[i]);
      continue;
    }
    const auto semi = text.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back('&');
      continue;
    }
    const std::string_view ent = text.substr(i + 1, semi - i - 1);
    std::optional<std::uint32_t> cp;
    if (ent == "amp") cp = '&';
    else if (ent == "lt") cp = '<';
    else if (ent == "gt") cp = '>';
    else if (ent == "quot") cp = '"';
    else if (ent == "apos") cp = '\'';
    else if (ent == "nbsp") cp = 0xA0;
    else if (ent == "middot") cp = 0xB7;
    else if (ent == "times") cp = 0xD7;
    else if (ent == "copy") cp = 0xA9;
    else if (ent == "reg") cp = 0xAE;
    else if (ent == "trade") cp = 0x2122;
    else if (ent == "hellip") cp = 0x2026;
    else if (ent == "ndash") cp = 0x2013;
    else if (ent == "mdash") cp = 0x2014;
    else if (ent == "bull") cp = 0x2022;
    else if (ent.size() > 1 && ent[0] == '#') {
      try {
        std::size_t used = 0;
        const bool hex = ent[1] == 'x' || ent[1] == 'X';
        const std::string digits(ent.substr(hex ? 2 : 1));
        const unsigned long v = std::stoul(digits, &used, hex ? 16 : 10);
        if (used == digits.size() && v > 0 && v <= 0x10FFFF) cp = static_cast<std::uint32_t>(v);
      } catch (const std::exception&) {
      }
    }
    if (!cp) {
      out.push_back('&');
      continue;
    }
    append_utf8(out, *cp);
    i = semi;
  }
  return out;
}

std::string text_content(const Node& node) {
  std::string out;
  text_into(node, out);
  return out;
}

}  // namespace screenforge::templating
