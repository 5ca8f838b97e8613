#include "screenforge/templating/template.hpp"

#include <algorithm>
#include <array>
#include <regex>

#include "screenforge/error.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::templating {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 19> kPageTypes = {
    "account_dashboard", "account_selection", "added_to_cart",   "address_validator", "billing_address",
    "billing_payment",   "cart",              "checkout",        "customer_info",     "delivery_shipping",
    "gifting",           "order_details",     "order_history",   "order_tracking",    "payment_entry",
    "product_page",      "receipt",           "sign_in",         "store_pickup",
};

constexpr std::array<std::pair<Family, std::string_view>, 3> kAnnotationAttrs = {{
    {Family::pii, "data-pii"},
    {Family::product, "data-product"},
    {Family::order, "data-order"},
}};

const std::regex& placeholder_re() {
  static const std::regex re(R"(\{\{\s*([A-Z][A-Z0-9_]*)\s*\}\})");
  return re;
}

struct Piece {
  bool placeholder = false;
  std::string text;  // literal source text or the key
};

// Splits text into literal and placeholder pieces. A "{{" that does not open
// a well-formed placeholder is a parse error.
std::vector<Piece> split_placeholders(const std::string& s, int line, int column) {
  std::vector<Piece> out;
  std::size_t pos = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), placeholder_re()); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const auto at = static_cast<std::size_t>(m.position(0));
    if (at > pos) out.push_back({false, s.substr(pos, at - pos)});
    out.push_back({true, m[1].str()});
    pos = at + static_cast<std::size_t>(m.length(0));
  }
  if (pos < s.size()) out.push_back({false, s.substr(pos)});
  for (const auto& p : out) {
    if (!p.placeholder && p.text.find("{{") != std::string::npos) {
      throw ParseError("malformed placeholder near '" + p.text.substr(p.text.find("{{"), 24) + "'", line, column);
    }
  }
  return out;
}

bool has_placeholder(const std::string& s) { return s.find("{{") != std::string::npos; }

std::optional<std::pair<Family, std::string>> annotation_attr(const Node& el) {
  std::optional<std::pair<Family, std::string>> found;
  for (const auto& [family, name] : kAnnotationAttrs) {
    if (auto v = el.attr(name)) {
      if (found) {
        throw ParseError("<" + el.tag + "> carries more than one annotation attribute", el.line, el.column);
      }
      found = std::make_pair(family, *v);
    }
  }
  return found;
}

bool is_form_control(const Node& el) { return el.tag == "input" || el.tag == "select" || el.tag == "textarea"; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

InputKind parse_input_kind(const std::string& s) {
  if (s == "text") return InputKind::text;
  if (s == "dropdown") return InputKind::dropdown;
  if (s == "checkbox") return InputKind::checkbox;
  throw ParseError("unknown input_kind '" + s + "' in layout meta");
}

bool element_matches_kind(const Node& el, InputKind kind) {
  const std::string type = lower(el.attr("type").value_or("text"));
  switch (kind) {
    case InputKind::text:
      return el.tag == "textarea" || (el.tag == "input" && type != "checkbox" && type != "radio" &&
                                      type != "submit" && type != "button" && type != "hidden");
    case InputKind::dropdown:
      return el.tag == "select";
    case InputKind::checkbox:
      return el.tag == "input" && (type == "checkbox" || type == "radio");
  }
  return false;
}

struct FieldSite {
  const Node* el = nullptr;
  std::string group;
};

struct ParseState {
  LayoutTemplate* t;
  std::map<std::string, FieldSite> field_sites;
  std::set<std::string> groups;
  std::map<std::string, std::set<std::string>> keys_by_group;  // "" = required
};

void scan(const Node& node, ParseState& st, std::vector<std::string>& group_stack, AnnotationSlot* slot) {
  if (node.type == Node::Type::text) {
    if (!has_placeholder(node.text)) return;
    for (const auto& p : split_placeholders(node.text, node.line, node.column)) {
      if (!p.placeholder) continue;
      st.t->placeholder_keys.insert(p.text);
      st.keys_by_group[group_stack.empty() ? "" : group_stack.back()].insert(p.text);
      if (slot && !node.raw_text) slot->keys.push_back(p.text);
    }
    return;
  }
  if (!node.is_element()) return;
  bool pushed_group = false;
  if (auto g = node.attr("data-optional")) {
    if (g->empty()) throw ParseError("empty data-optional id", node.line, node.column);
    st.groups.insert(*g);
    group_stack.push_back(*g);
    pushed_group = true;
  }
  const std::string group = group_stack.empty() ? "" : group_stack.back();
  AnnotationSlot* current = slot;
  if (auto ann = annotation_attr(node)) {
    AnnotationSlot s;
    s.cls = AnnotationClass::of(resolve_label(ann->first, ann->second));
    s.optional_group = group;
    s.line = node.line;
    s.column = node.column;
    if (auto f = node.attr("data-field")) s.field_id = *f;
    st.t->slots.push_back(std::move(s));
    current = &st.t->slots.back();
  }
  for (const auto& [name, value] : node.attrs) {
    if (!has_placeholder(value)) continue;
    for (const auto& p : split_placeholders(value, node.line, node.column)) {
      if (!p.placeholder) continue;
      st.t->placeholder_keys.insert(p.text);
      st.keys_by_group[group].insert(p.text);
      if (current && current != slot && name == "src") current->keys.push_back(p.text);
    }
  }
  if (auto f = node.attr("data-field")) {
    if (!st.field_sites.emplace(*f, FieldSite{&node, group}).second) {
      throw ParseError("data-field '" + *f + "' appears twice", node.line, node.column);
    }
  }
  for (const auto& child : node.children) scan(*child, st, group_stack, current);
  if (pushed_group) group_stack.pop_back();
}

std::string meta_string(const json& meta, const char* key, bool required) {
  if (!meta.contains(key)) {
    if (required) throw ParseError(std::string("layout meta lacks '") + key + "'");
    return "";
  }
  if (!meta.at(key).is_string()) throw ParseError(std::string("layout meta '") + key + "' must be a string");
  return meta.at(key).get<std::string>();
}

std::vector<FieldDescriptor> parse_fields(const json& meta) {
  std::vector<FieldDescriptor> fields;
  if (!meta.contains("fields")) return fields;
  try {
    for (const auto& f : meta.at("fields")) {
      FieldDescriptor d;
      d.field_id = f.at("id").get<std::string>();
      d.input_kind = parse_input_kind(f.value("input_kind", std::string("text")));
      d.bound_key = f.value("bound_key", std::string());
      d.placeholder_text = f.value("placeholder", std::string());
      d.optional = f.value("optional", false);
      d.fill_order = f.at("fill_order").get<int>();
      fields.push_back(std::move(d));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("layout meta fields: ") + e.what());
  }
  return fields;
}

void check_fill_orders(std::vector<FieldDescriptor>& fields) {
  std::map<int, std::string> seen;
  for (const auto& f : fields) {
    auto [it, fresh] = seen.emplace(f.fill_order, f.field_id);
    if (!fresh) {
      throw ParseError("fields '" + it->second + "' and '" + f.field_id + "' share fill_order " +
                       std::to_string(f.fill_order));
    }
  }
  const int n = static_cast<int>(fields.size());
  for (const auto& f : fields) {
    if (f.fill_order < 1 || f.fill_order > n) {
      throw ParseError("field '" + f.field_id + "' has fill_order " + std::to_string(f.fill_order) +
                       ", expected a value in 1.." + std::to_string(n));
    }
  }
  std::sort(fields.begin(), fields.end(),
            [](const FieldDescriptor& a, const FieldDescriptor& b) { return a.fill_order < b.fill_order; });
}

bool is_relative_url(std::string_view url) {
  static const std::regex scheme(R"(^[A-Za-z][A-Za-z0-9+.\-]*:)");
  if (url.empty() || url.front() == '#' || url.front() == '/' || has_placeholder(std::string(url))) return false;
  return !std::regex_search(std::string(url), scheme);
}

// url(...) references in CSS, rebased like src/href.
std::string rebase_css_urls(const std::string& css, const fs::path& base_dir) {
  static const std::regex url_re(R"(url\(\s*(['"]?)([^'")]*)\1\s*\))");
  std::string out;
  auto last = css.cbegin();
  for (auto it = std::sregex_iterator(css.begin(), css.end(), url_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(last, m[0].first);
    const std::string url = m[2].str();
    if (is_relative_url(url)) {
      out += "url(\"" + file_url(base_dir / url) + "\")";
    } else {
      out += m[0].str();
    }
    last = m[0].second;
  }
  out.append(last, css.cend());
  return out;
}

// ---- instantiation -----------------------------------------------------------

struct OpenSlot {
  std::size_t index;        // into bindings
  std::string buffer;       // decoded text content so far
  std::size_t units = 0;    // UTF-16 length of buffer
  std::optional<std::size_t> start, end;
  std::size_t byte_start = 0, byte_end = 0;
};

class Instantiator {
 public:
  Instantiator(const LayoutTemplate& t, const configgen::DataConfig& c, const fill::FillState& f)
      : t_(t), config_(c), fill_(f) {}

  PageDocument run() {
    for (const auto& [id, state] : fill_.per_field) {
      const FieldDescriptor* d = t_.field(id);
      if (!d) throw Error(Errc::fill_mismatch, "fill state names unknown field '" + id + "'");
      if (!d->optional_group.empty() && !config_.included_optional_fields.count(d->optional_group)) {
        throw Error(Errc::fill_mismatch, "fill state names field '" + id + "' of an excluded optional group");
      }
    }
    for (const auto& d : t_.included_fields(config_.included_optional_fields)) {
      if (!fill_.per_field.count(d.field_id)) {
        throw Error(Errc::fill_mismatch, "fill state has no entry for field '" + d.field_id + "'");
      }
    }
    Document doc = t_.dom.clone();
    visit(*doc.root);
    std::map<std::string, int> seen;
    for (auto& b : page_.slots) {
      if (b.key.empty()) continue;
      const int n = ++seen[b.key];
      if (n > 1) b.key += "#" + std::to_string(n);
    }
    for (std::size_t i = 0; i < page_.slots.size(); ++i) marks_[i]->set_attr("data-sf-key", page_.slots[i].key);
    page_.html = serialize(doc);
    return std::move(page_);
  }

 private:
  const configgen::ConfigValue& value(const std::string& key) const {
    auto it = config_.values.find(key);
    if (it == config_.values.end()) {
      throw Error(Errc::missing_key, "config for " + config_.layout_id + " has no value for '" + key + "'");
    }
    return it->second;
  }

  std::string attr_value(const std::string& key) const {
    const auto& v = value(key);
    return v.type == configgen::ValueType::image_ref ? file_url(v.value) : v.value;
  }

  void text_node(Node& node) {
    const std::string& raw = node.text;
    const bool decode = !node.raw_text;
    std::vector<Piece> pieces = split_placeholders(raw, node.line, node.column);
    std::string out;
    for (const auto& p : pieces) {
      std::string shown;
      if (p.placeholder) {
        const auto& v = value(p.text);
        shown = v.type == configgen::ValueType::image_ref ? file_url(v.value) : v.value;
        out += decode ? html_escape(shown, false) : shown;
      } else {
        shown = decode ? decode_entities(p.text) : p.text;
        out += p.text;
      }
      if (open_.empty()) continue;
      OpenSlot& s = open_.back();
      const bool owner = p.placeholder && decode;
      if (owner && !s.start) {
        s.start = s.units;
        s.byte_start = s.buffer.size();
      }
      s.buffer += shown;
      s.units += utf16_length(shown);
      if (owner) {
        s.end = s.units;
        s.byte_end = s.buffer.size();
      }
    }
    node.text = std::move(out);
  }

  void apply_field(Node& el, const FieldDescriptor& d) {
    const fill::FieldState& st = fill_.per_field.at(d.field_id);
    std::string full;
    if (!d.bound_key.empty()) {
      full = value(d.bound_key).value;
    } else if (d.input_kind == InputKind::checkbox) {
      full = "on";
    }
    std::string shown;
    if (st.fill == fill::FieldFill::full) {
      shown = full;
    } else if (st.fill == fill::FieldFill::prefix) {
      const auto starts = utf8_starts(full);
      if (st.prefix_len == 0 || st.prefix_len > starts.size()) {
        throw Error(Errc::fill_mismatch, "prefix length " + std::to_string(st.prefix_len) + " invalid for field '" +
                                             d.field_id + "'");
      }
      shown = st.prefix_len == starts.size() ? full : full.substr(0, starts[st.prefix_len]);
    }
    switch (d.input_kind) {
      case InputKind::text:
        if (el.tag == "textarea") {
          el.children.clear();
          if (!shown.empty()) {
            auto t = std::make_unique<Node>();
            t->type = Node::Type::text;
            t->text = html_escape(shown, false);
            el.children.push_back(std::move(t));
          }
        } else {
          el.remove_attr("value");
          if (!shown.empty()) el.set_attr("value", shown);
        }
        if (!d.placeholder_text.empty()) el.set_attr("placeholder", d.placeholder_text);
        break;
      case InputKind::dropdown: {
        bool matched = false;
        for (auto& child : el.children) {
          if (!child->is_element() || child->tag != "option") continue;
          child->remove_attr("selected");
          if (shown.empty() || matched) continue;
          const std::string v = child->attr("value").value_or(std::string(trim(text_content(*child))));
          if (v == shown) {
            child->set_attr("selected", "");
            matched = true;
          }
        }
        if (!shown.empty() && !matched) {
          auto opt = std::make_unique<Node>();
          opt->type = Node::Type::element;
          opt->tag = "option";
          opt->attrs = {{"value", shown}, {"selected", ""}};
          auto t = std::make_unique<Node>();
          t->type = Node::Type::text;
          t->text = html_escape(shown, false);
          opt->children.push_back(std::move(t));
          el.children.push_back(std::move(opt));
        }
        break;
      }
      case InputKind::checkbox:
        el.remove_attr("checked");
        if (!shown.empty()) el.set_attr("checked", "");
        break;
    }
    el.set_attr("data-sf-fill", std::string(fill::to_string(st.fill)));
    page_.field_values[d.field_id] = d.input_kind == InputKind::checkbox ? (shown.empty() ? "" : "checked") : shown;
  }

  void element(Node& el) {
    std::optional<std::size_t> binding;
    std::optional<std::pair<Family, std::string>> ann = annotation_attr(el);
    if (ann) {
      const AnnotationClass cls = AnnotationClass::of(resolve_label(ann->first, ann->second));
      SlotBinding b;
      b.cls = cls;
      b.field_id = el.attr("data-field").value_or("");
      binding = page_.slots.size();
      page_.slots.push_back(std::move(b));
      marks_.push_back(&el);
      if (cls.element_kind == ElementKind::text) open_.push_back(OpenSlot{*binding, {}, 0, {}, {}, 0, 0});
    }
    std::vector<std::string> src_keys;
    for (auto& [name, val] : el.attrs) {
      if (has_placeholder(val)) {
        std::string out;
        for (const auto& p : split_placeholders(val, el.line, el.column)) {
          if (p.placeholder) {
            out += attr_value(p.text);
            if (name == "src") src_keys.push_back(p.text);
          } else {
            out += p.text;
          }
        }
        val = std::move(out);
      } else if ((name == "src" || name == "href") && el.tag != "a" && !t_.base_dir.empty() && is_relative_url(val)) {
        val = file_url(t_.base_dir / val);
      } else if (name == "style" && !t_.base_dir.empty()) {
        val = rebase_css_urls(val, t_.base_dir);
      }
    }
    if (el.tag == "style" && !t_.base_dir.empty()) {
      for (auto& child : el.children)
        if (child->type == Node::Type::text) child->text = rebase_css_urls(child->text, t_.base_dir);
    }
    if (auto f = el.attr("data-field")) {
      if (const FieldDescriptor* d = t_.field(*f)) apply_field(el, *d);
    }
    std::erase_if(el.children, [&](const std::unique_ptr<Node>& child) {
      if (!child->is_element()) return false;
      auto g = child->attr("data-optional");
      return g && !config_.included_optional_fields.count(*g);
    });
    for (auto& child : el.children) visit(*child);
    if (!binding) return;
    SlotBinding& b = page_.slots[*binding];
    el.set_attr("data-sf-family", std::string(to_string(b.cls.kind)));
    el.set_attr("data-sf-label", std::string(to_string(b.cls.fine_label)));
    el.set_attr("data-sf-kind", std::string(to_string(b.cls.element_kind)));
    if (!b.field_id.empty()) el.set_attr("data-sf-field", b.field_id);
    if (b.cls.element_kind == ElementKind::image) {
      for (std::size_t i = 0; i < src_keys.size(); ++i) b.key += (i ? "+" : "") + src_keys[i];
    } else if (b.cls.element_kind == ElementKind::text) {
      OpenSlot s = std::move(open_.back());
      open_.pop_back();
      if (s.start) {
        b.start = *s.start;
        b.end = *s.end;
        b.text = s.buffer.substr(s.byte_start, s.byte_end - s.byte_start);
        el.set_attr("data-sf-start", std::to_string(b.start));
        el.set_attr("data-sf-end", std::to_string(b.end));
      }
      // An enclosing text slot also sees this element's text.
      if (!open_.empty()) {
        open_.back().buffer += s.buffer;
        open_.back().units += s.units;
      }
    }
    const std::vector<std::string>& keys = keys_for(el);
    if (b.cls.element_kind == ElementKind::text) {
      for (std::size_t i = 0; i < keys.size(); ++i) b.key += (i ? "+" : "") + keys[i];
    }
    if (b.key.empty() && b.cls.element_kind != ElementKind::input) {
      // Nothing substituted here: not an annotation the extractor should report.
      marks_.erase(marks_.begin() + static_cast<std::ptrdiff_t>(*binding));
      page_.slots.erase(page_.slots.begin() + static_cast<std::ptrdiff_t>(*binding));
      for (const char* a : {"data-sf-family", "data-sf-label", "data-sf-kind", "data-sf-field"}) el.remove_attr(a);
    }
  }

  // Keys of a text slot: its own placeholders, recorded at parse time.
  const std::vector<std::string>& keys_for(const Node& el) const {
    static const std::vector<std::string> none;
    for (const auto& s : t_.slots)
      if (s.line == el.line && s.column == el.column) return s.keys;
    return none;
  }

  void visit(Node& node) {
    if (node.type == Node::Type::text) {
      text_node(node);
    } else if (node.is_element()) {
      element(node);
    }
  }

  const LayoutTemplate& t_;
  const configgen::DataConfig& config_;
  const fill::FillState& fill_;
  PageDocument page_;
  std::vector<Node*> marks_;
  std::vector<OpenSlot> open_;
};

}  // namespace

std::span<const std::string_view> page_types() { return kPageTypes; }

bool is_page_type(std::string_view s) {
  return std::find(kPageTypes.begin(), kPageTypes.end(), s) != kPageTypes.end();
}

std::string_view to_string(InputKind k) {
  switch (k) {
    case InputKind::text: return "text";
    case InputKind::dropdown: return "dropdown";
    case InputKind::checkbox: return "checkbox";
  }
  return "?";
}

std::string_view to_string(IssueKind k) {
  switch (k) {
    case IssueKind::hardcoded_pii: return "hardcoded_pii";
    case IssueKind::missing_attribute: return "missing_attribute";
    case IssueKind::unknown_key: return "unknown_key";
    case IssueKind::hardcoded_dropdown: return "hardcoded_dropdown";
    case IssueKind::missing_placeholder_option: return "missing_placeholder_option";
    case IssueKind::empty_annotation: return "empty_annotation";
    case IssueKind::misplaced_input_label: return "misplaced_input_label";
    case IssueKind::placeholder_in_script: return "placeholder_in_script";
  }
  return "?";
}

FineLabel resolve_label(Family family, std::string_view value) {
  static const std::map<std::string, FineLabel> pii = {
      {"name", FineLabel::name},           {"fullname", FineLabel::name},
      {"full_name", FineLabel::name},      {"first_name", FineLabel::name},
      {"last_name", FineLabel::name},      {"address", FineLabel::address},
      {"street", FineLabel::address},      {"city", FineLabel::address},
      {"zip", FineLabel::address},         {"contact", FineLabel::contact},
      {"email", FineLabel::contact},       {"phone", FineLabel::contact},
      {"payment", FineLabel::payment},     {"card", FineLabel::payment},
      {"card_number", FineLabel::payment}, {"other_pii", FineLabel::other_pii},
      {"other", FineLabel::other_pii},     {"gift", FineLabel::other_pii},
      {"message", FineLabel::other_pii},   {"username", FineLabel::other_pii},
      {"instructions", FineLabel::other_pii}, {"input_field", FineLabel::input_field},
      {"input", FineLabel::input_field},
  };
  static const std::map<std::string, FineLabel> product = {
      {"product_text", FineLabel::product_text},   {"text", FineLabel::product_text},
      {"name", FineLabel::product_text},           {"title", FineLabel::product_text},
      {"description", FineLabel::product_text},    {"brand", FineLabel::product_text},
      {"price", FineLabel::product_text},          {"rating", FineLabel::product_text},
      {"reviews", FineLabel::product_text},        {"quantity", FineLabel::product_text},
      {"product_image", FineLabel::product_image}, {"image", FineLabel::product_image},
  };
  static const std::map<std::string, FineLabel> order = {
      {"order_info", FineLabel::order_info}, {"order_id", FineLabel::order_info}, {"id", FineLabel::order_info},
      {"tracking", FineLabel::order_info},   {"date", FineLabel::order_info},     {"total", FineLabel::order_info},
      {"subtotal", FineLabel::order_info},   {"tax", FineLabel::order_info},      {"shipping", FineLabel::order_info},
      {"info", FineLabel::order_info},
  };
  const auto& vocab = family == Family::pii ? pii : family == Family::product ? product : order;
  const std::string key = lower(trim(value));
  auto it = vocab.find(key);
  if (it == vocab.end()) {
    throw Error(Errc::unknown_attribute,
                "data-" + std::string(to_string(family)) + "=\"" + std::string(value) + "\" is not a known label");
  }
  return it->second;
}

LayoutTemplate::LayoutTemplate(const LayoutTemplate& o)
    : layout_id(o.layout_id),
      brand(o.brand),
      page_type(o.page_type),
      markup(o.markup),
      dom(o.dom.clone()),
      fields(o.fields),
      data_spec(o.data_spec),
      slots(o.slots),
      placeholder_keys(o.placeholder_keys),
      base_dir(o.base_dir) {}

LayoutTemplate& LayoutTemplate::operator=(const LayoutTemplate& o) {
  if (this != &o) *this = LayoutTemplate(o);
  return *this;
}

std::vector<FieldDescriptor> LayoutTemplate::included_fields(const std::set<std::string>& included_groups) const {
  std::vector<FieldDescriptor> out;
  for (const auto& f : fields)
    if (f.optional_group.empty() || included_groups.count(f.optional_group)) out.push_back(f);
  return out;
}

const FieldDescriptor* LayoutTemplate::field(std::string_view id) const {
  for (const auto& f : fields)
    if (f.field_id == id) return &f;
  return nullptr;
}

LayoutTemplate parse_template(std::string_view markup, const json& meta, const fs::path& base_dir) {
  LayoutTemplate t;
  t.markup = std::string(markup);
  // Browsers normalize newlines before tokenizing; offsets must agree.
  t.markup = std::regex_replace(t.markup, std::regex("\r\n?"), "\n");
  t.dom = parse_html(t.markup);
  if (!meta.is_object()) throw ParseError("layout meta must be an object");
  t.layout_id = meta_string(meta, "layout_id", true);
  t.brand = meta_string(meta, "brand", true);
  t.page_type = meta_string(meta, "page_type", true);
  if (!is_page_type(t.page_type)) throw ParseError("unknown page_type '" + t.page_type + "'");
  if (!base_dir.empty()) t.base_dir = fs::absolute(base_dir).lexically_normal();
  if (meta.contains("data_spec")) t.data_spec = configgen::data_spec_from_json(meta.at("data_spec"));

  ParseState st{&t, {}, {}, {}};
  std::vector<std::string> groups;
  // Slots are pointed into while scanning; reserve enough to avoid reallocation.
  std::size_t annotated = 0;
  walk(*t.dom.root, [&](const Node& n) {
    if (n.is_element() && (n.has_attr("data-pii") || n.has_attr("data-product") || n.has_attr("data-order")))
      ++annotated;
  });
  t.slots.reserve(annotated);
  scan(*t.dom.root, st, groups, nullptr);

  t.fields = parse_fields(meta);
  for (auto& f : t.fields) {
    auto site = st.field_sites.find(f.field_id);
    if (site == st.field_sites.end()) throw ParseError("field '" + f.field_id + "' has no data-field element");
    const Node& el = *site->second.el;
    if (!element_matches_kind(el, f.input_kind)) {
      throw ParseError("field '" + f.field_id + "' is declared " + std::string(to_string(f.input_kind)) + " but is a <" +
                           el.tag + ">",
                       el.line, el.column);
    }
    f.optional_group = site->second.group;
    if (f.optional != !f.optional_group.empty()) {
      throw ParseError("field '" + f.field_id + "' optional flag disagrees with its data-optional placement", el.line,
                       el.column);
    }
    if (!f.bound_key.empty()) st.keys_by_group[f.optional_group].insert(f.bound_key);
  }
  for (const auto& [id, site] : st.field_sites) {
    if (!t.field(id)) throw ParseError("data-field '" + id + "' is not declared in layout meta", site.el->line, site.el->column);
  }
  check_fill_orders(t.fields);

  auto& spec = t.data_spec;
  for (const auto& k : st.keys_by_group[""]) spec.required_keys.insert(k);
  std::map<std::string, double> probability;
  for (const auto& f : spec.optional_fields) {
    if (!st.groups.count(f.id)) throw ParseError("optional field '" + f.id + "' has no data-optional element");
    probability[f.id] = f.probability;
  }
  spec.optional_fields.clear();
  for (const auto& g : st.groups) {
    spec.optional_fields.push_back({g, probability.count(g) ? probability[g] : 0.5});
    for (const auto& k : st.keys_by_group[g])
      if (!spec.required_keys.count(k)) spec.optional_keys[g].insert(k);
  }
  return t;
}

LayoutTemplate load_template(const fs::path& dir) {
  const std::string markup = read_file(dir / "page.html");
  json meta;
  try {
    meta = json::parse(read_file(dir / "layout.meta"));
  } catch (const json::parse_error& e) {
    throw ParseError((dir / "layout.meta").string() + ": " + e.what());
  }
  try {
    return parse_template(markup, meta, dir);
  } catch (const ParseError& e) {
    throw ParseError((dir / "page.html").string() + ": " + e.what(), e.line(), e.column());
  }
}

std::vector<fs::path> list_layout_dirs(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(Errc::io_error, "layouts directory '" + root.string() + "' not found");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "page.html")) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool luhn_ok(const std::string& digits) {
  int sum = 0;
  bool dbl = false;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    int d = *it - '0';
    if (dbl) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
    dbl = !dbl;
  }
  return sum % 10 == 0;
}

std::optional<std::string> pii_like(const std::string& text) {
  static const std::regex email(R"([A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,})");
  static const std::regex phone(R"((\(\d{3}\)\s?|\b\d{3}[\-.\s])\d{3}[\-.\s]\d{4}\b)");
  static const std::regex card(R"(\b\d(?:[ \-]?\d){12,18}\b)");
  std::smatch m;
  if (std::regex_search(text, m, email)) return m.str();
  if (std::regex_search(text, m, phone)) return m.str();
  for (auto it = std::sregex_iterator(text.begin(), text.end(), card); it != std::sregex_iterator(); ++it) {
    std::string digits;
    for (char c : it->str())
      if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    if (digits.size() >= 13 && digits.size() <= 19 && luhn_ok(digits)) return it->str();
  }
  return std::nullopt;
}

std::string without_placeholders(const std::string& s) { return std::regex_replace(s, placeholder_re(), " "); }

void validate_node(const Node& node, const LayoutTemplate& t, bool annotated, bool in_script,
                   std::vector<TemplateIssue>& out) {
  if (node.type == Node::Type::text) {
    if (in_script) {
      if (has_placeholder(node.text))
        out.push_back({IssueKind::placeholder_in_script, "placeholder inside script/style", node.line, node.column});
      return;
    }
    if (auto hit = pii_like(decode_entities(without_placeholders(node.text)))) {
      out.push_back({IssueKind::hardcoded_pii, "literal '" + *hit + "' looks like real data", node.line, node.column});
    }
    if (!annotated && has_placeholder(node.text)) {
      std::smatch m;
      std::regex_search(node.text, m, placeholder_re());
      out.push_back({IssueKind::missing_attribute, "{{" + m[1].str() + "}} has no enclosing annotation attribute",
                     node.line, node.column});
    }
    return;
  }
  if (!node.is_element()) return;
  const bool self_annotated =
      node.has_attr("data-pii") || node.has_attr("data-product") || node.has_attr("data-order");
  for (const auto& [name, value] : node.attrs) {
    if (name == "placeholder" || name.rfind("data-", 0) == 0) continue;
    if (auto hit = pii_like(without_placeholders(value))) {
      out.push_back({IssueKind::hardcoded_pii, "attribute " + name + "='" + *hit + "' looks like real data", node.line,
                     node.column});
    }
    if (name == "src" && has_placeholder(value) && !self_annotated) {
      out.push_back({IssueKind::missing_attribute, "<" + node.tag + " src> placeholder has no annotation attribute",
                     node.line, node.column});
    }
  }
  if (self_annotated) {
    std::optional<std::pair<Family, std::string>> ann = annotation_attr(node);
    const FineLabel label = resolve_label(ann->first, ann->second);
    if (is_form_control(node) != (label == FineLabel::input_field)) {
      out.push_back({IssueKind::misplaced_input_label,
                     is_form_control(node) ? "form control must be annotated as input_field"
                                           : "input_field annotation on a non-form element",
                     node.line, node.column});
    }
  }
  if (node.tag == "select" && node.has_attr("data-field")) {
    bool placeholder_option = false;
    for (const auto& child : node.children) {
      if (!child->is_element() || child->tag != "option") continue;
      if (child->has_attr("selected")) {
        out.push_back({IssueKind::hardcoded_dropdown, "dropdown '" + *node.attr("data-field") + "' preselects an option",
                       child->line, child->column});
      }
      if (child->attr("value").value_or("x").empty()) placeholder_option = true;
    }
    if (!placeholder_option) {
      out.push_back({IssueKind::missing_placeholder_option,
                     "dropdown '" + *node.attr("data-field") + "' has no empty-value placeholder option", node.line,
                     node.column});
    }
  }
  if (is_form_control(node) && node.has_attr("data-field")) {
    if (node.has_attr("value") && !node.attr("value")->empty() && node.tag == "input" &&
        lower(node.attr("type").value_or("text")) != "checkbox") {
      out.push_back({IssueKind::hardcoded_dropdown, "field '" + *node.attr("data-field") + "' has a preset value",
                     node.line, node.column});
    }
  }
  const bool script = node.tag == "script" || node.tag == "style";
  for (const auto& child : node.children) validate_node(*child, t, annotated || self_annotated, script, out);
}

}  // namespace

std::vector<TemplateIssue> validate_template(const LayoutTemplate& t) {
  std::vector<TemplateIssue> out;
  validate_node(*t.dom.root, t, false, false, out);
  for (const auto& key : t.placeholder_keys) {
    if (!configgen::has_generator(key, t.data_spec))
      out.push_back({IssueKind::unknown_key, "no generation rule for {{" + key + "}}", 0, 0});
  }
  for (const auto& f : t.fields) {
    if (!f.bound_key.empty() && !configgen::has_generator(f.bound_key, t.data_spec))
      out.push_back({IssueKind::unknown_key, "field '" + f.field_id + "' binds unknown key " + f.bound_key, 0, 0});
  }
  for (const auto& s : t.slots) {
    if (s.cls.element_kind != ElementKind::input && s.keys.empty()) {
      out.push_back({IssueKind::empty_annotation,
                     std::string(to_string(s.cls.fine_label)) + " annotation renders no placeholder", s.line, s.column});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const TemplateIssue& a, const TemplateIssue& b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  return out;
}

PageDocument instantiate(const LayoutTemplate& t, const configgen::DataConfig& config, const fill::FillState& fill) {
  return Instantiator(t, config, fill).run();
}

std::map<std::string, std::string> read_field_values(std::string_view html) {
  const Document doc = parse_html(html);
  std::map<std::string, std::string> out;
  walk(static_cast<const Node&>(*doc.root), [&](const Node& n) {
    if (!n.is_element()) return;
    auto id = n.attr("data-field");
    if (!id) return;
    std::string v;
    if (n.tag == "textarea") {
      v = text_content(n);
    } else if (n.tag == "select") {
      for (const auto& c : n.children) {
        if (c->is_element() && c->tag == "option" && c->has_attr("selected")) {
          v = c->attr("value").value_or(std::string(trim(text_content(*c))));
        }
      }
    } else if (lower(n.attr("type").value_or("text")) == "checkbox" || lower(n.attr("type").value_or("")) == "radio") {
      v = n.has_attr("checked") ? "checked" : "";
    } else {
      v = n.attr("value").value_or("");
    }
    out[*id] = v;
  });
  return out;
}

std::string file_url(const fs::path& path) {
  static const char* hex = "0123456789ABCDEF";
  std::string out = "file://";
  for (unsigned char c : fs::absolute(path).lexically_normal().string()) {
    if (std::isalnum(c) || c == '/' || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

}  // namespace screenforge::templating
