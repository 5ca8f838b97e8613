#include "screenforge/catalog/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>
#include <set>
#include <system_error>

#include <nlohmann/json.hpp>

#include "screenforge/error.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::catalog {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (j.at(key).is_number()) return j.at(key).dump();
  return j.at(key).get<std::string>();
}

std::map<std::string, int> count_tokens(const ProductRecord& r) {
  std::map<std::string, int> counts;
  for (auto& t : tokenize_lower(r.title + " " + r.description)) ++counts[t];
  return counts;
}

std::int64_t dot(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  std::int64_t sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += static_cast<std::int64_t>(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

double cosine(const std::map<std::string, int>& a, const std::map<std::string, int>& b) {
  const std::int64_t na = dot(a, a);
  const std::int64_t nb = dot(b, b);
  if (na == 0 || nb == 0) return 0.0;
  return static_cast<double>(dot(a, b)) / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<RawProduct> parse_ndjson(std::string_view text) {
  std::vector<RawProduct> out;
  int line_no = 0;
  for (const auto& line : split(text, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("catalog record: ") + e.what(), line_no, 1);
    }
    RawProduct p;
    p.id = optional_string(j, "id").value_or("");
    p.title = optional_string(j, "title").value_or("");
    p.description = optional_string(j, "description").value_or("");
    p.brand = optional_string(j, "brand");
    p.category = optional_string(j, "category");
    p.price = optional_string(j, "price");
    p.image = optional_string(j, "image").value_or("");
    if (p.id.empty()) throw ParseError("catalog record without id", line_no, 1);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<RawProduct> load_ndjson(const fs::path& path) { return parse_ndjson(read_file(path)); }

std::string to_ndjson_line(const RawProduct& raw) {
  json j{{"id", raw.id}, {"title", raw.title}, {"description", raw.description}, {"image", raw.image}};
  if (raw.brand) j["brand"] = *raw.brand;
  if (raw.category) j["category"] = *raw.category;
  if (raw.price) j["price"] = *raw.price;
  return j.dump();
}

std::string clean_title(std::string_view title) {
  static const std::regex boilerplate(
      R"((^|\s)(Amazon\s+Brand\s*(?:-|–)\s*|AmazonBasics\b|Amazon\s+Basics\b|\bB0[0-9A-Z]{8}\b|\(ASIN[^)]*\)))",
      std::regex::icase);
  const std::string s = std::regex_replace(std::string(title), boilerplate, " ");
  std::string out;
  bool space = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  // A leading separator left behind by a removed prefix.
  while (!out.empty() && (out.front() == '-' || out.front() == ',' || out.front() == ' ')) out.erase(out.begin());
  return out;
}

std::string infer_brand(std::string_view title) {
  const auto comma = title.find(',');
  const std::string_view head = comma == std::string_view::npos ? title : title.substr(0, comma);
  std::vector<std::string> run;
  for (const auto& token : split(trim(head), ' ')) {
    if (token.empty()) continue;
    if (!starts_with_upper_or_digit(token)) break;
    run.push_back(token);
    if (comma == std::string_view::npos) break;
  }
  std::string brand;
  for (const auto& t : run) {
    if (!brand.empty()) brand.push_back(' ');
    brand += t;
  }
  return brand;
}

bool is_placeholder_image(const fs::path& path) {
  const std::string stem = lower(path.filename().string());
  for (const char* marker : {"placeholder", "no-image", "no_image", "noimage", "image-not-available"})
    if (stem.find(marker) != std::string::npos) return true;
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  return ec || size == 0;
}

Catalog Catalog::ingest(std::span<const RawProduct> raw, const fs::path& asset_root) {
  std::error_code ec;
  if (!fs::is_directory(asset_root, ec)) {
    throw Error(Errc::asset_root_missing, "asset root '" + asset_root.string() + "' is not a readable directory");
  }
  const fs::path root = fs::absolute(asset_root).lexically_normal();
  Catalog cat;
  std::set<std::string> ids;
  for (const RawProduct& p : raw) {
    ProductRecord r;
    r.id = p.id;
    r.title = clean_title(p.title);
    if (r.title.empty() || p.image.empty() || !ids.insert(p.id).second) continue;
    const fs::path image = (root / p.image).lexically_normal();
    if (!fs::is_regular_file(image, ec) || is_placeholder_image(image)) continue;
    r.image_ref = image.string();
    r.description = std::string(trim(p.description));
    r.brand = p.brand && !trim(*p.brand).empty() ? std::string(trim(*p.brand)) : infer_brand(r.title);
    r.category = p.category.value_or("");
    if (p.price) r.price_hint = Cents::parse(*p.price);
    cat.records_.push_back(std::move(r));
  }
  cat.build_index();
  return cat;
}

void Catalog::build_index() {
  token_counts_.clear();
  postings_.clear();
  token_counts_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    token_counts_.push_back(count_tokens(records_[i]));
    for (const auto& [token, n] : token_counts_.back()) postings_[token].push_back(i);
  }
}

std::size_t Catalog::indexed_record_count() const {
  std::set<std::size_t> covered;
  for (const auto& [token, list] : postings_) covered.insert(list.begin(), list.end());
  return covered.size();
}

const ProductRecord* Catalog::find(std::string_view id) const {
  for (const auto& r : records_)
    if (r.id == id) return &r;
  return nullptr;
}

double Catalog::similarity(const ProductRecord& a, const ProductRecord& b) {
  return cosine(count_tokens(a), count_tokens(b));
}

std::vector<ProductRecord> Catalog::similar(const ProductRecord& query, std::size_t k) const {
  if (k == 0) throw Error(Errc::invalid_argument, "similar() needs k >= 1");
  const auto qcounts = count_tokens(query);
  std::set<std::size_t> candidates;
  for (const auto& [token, n] : qcounts) {
    auto it = postings_.find(token);
    if (it != postings_.end()) candidates.insert(it->second.begin(), it->second.end());
  }
  struct Scored {
    double score;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].id == query.id) continue;
    const double s = candidates.count(i) ? cosine(qcounts, token_counts_[i]) : 0.0;
    scored.push_back({s, i});
  }
  std::sort(scored.begin(), scored.end(), [&](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return records_[a.index].id < records_[b.index].id;
  });
  std::vector<ProductRecord> out;
  for (std::size_t i = 0; i < scored.size() && out.size() < k; ++i) out.push_back(records_[scored[i].index]);
  return out;
}

const ProductRecord& Catalog::sample(Rng& rng, std::optional<std::string_view> category) const {
  if (!category) {
    if (records_.empty()) throw Error(Errc::no_eligible_product, "catalog is empty");
    return records_[static_cast<std::size_t>(rng.below(records_.size()))];
  }
  const std::string want = lower(*category);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (lower(records_[i].category) == want) eligible.push_back(i);
  if (eligible.empty()) throw Error(Errc::no_eligible_product, "no product in category '" + std::string(*category) + "'");
  return records_[eligible[static_cast<std::size_t>(rng.below(eligible.size()))]];
}

Catalog Catalog::filtered(const std::function<bool(const ProductRecord&)>& keep) const {
  Catalog out;
  for (const auto& r : records_)
    if (keep(r)) out.records_.push_back(r);
  out.build_index();
  return out;
}

std::vector<RawProduct> Catalog::to_raw(const fs::path& asset_root) const {
  const fs::path root = fs::absolute(asset_root).lexically_normal();
  std::vector<RawProduct> out;
  for (const auto& r : records_) {
    RawProduct p;
    p.id = r.id;
    p.title = r.title;
    p.description = r.description;
    p.brand = r.brand;
    if (!r.category.empty()) p.category = r.category;
    if (r.price_hint) p.price = r.price_hint->str();
    p.image = fs::path(r.image_ref).lexically_relative(root).string();
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace screenforge::catalog
