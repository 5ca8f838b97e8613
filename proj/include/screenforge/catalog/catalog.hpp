#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "screenforge/util/money.hpp"
#include "screenforge/util/rng.hpp"

namespace screenforge::catalog {

// One line of the ingest file. Paths are relative to the asset root.
struct RawProduct {
  std::string id;
  std::string title;
  std::string description;
  std::optional<std::string> brand;
  std::optional<std::string> category;
  std::optional<std::string> price;
  std::string image;
};

struct ProductRecord {
  std::string id;
  std::string title;
  std::string description;
  std::string brand;
  std::string image_ref;  // absolute path, or empty
  std::optional<Cents> price_hint;
  std::string category;

  bool operator==(const ProductRecord&) const = default;
};

// Newline-delimited JSON objects; blank lines are skipped.
std::vector<RawProduct> parse_ndjson(std::string_view text);
std::vector<RawProduct> load_ndjson(const std::filesystem::path& path);
std::string to_ndjson_line(const RawProduct& raw);

// Removes marketplace boilerplate ("Amazon Brand - ", "AmazonBasics", ASIN-like
// tokens) and collapses whitespace.
std::string clean_title(std::string_view title);

// Leading run of capitalized/numeric tokens before the first comma
// ("365 Everyday Value, Fragrance..." -> "365 Everyday Value"). Without a comma
// only a capitalized first token is taken. Empty when nothing qualifies.
std::string infer_brand(std::string_view title);

bool is_placeholder_image(const std::filesystem::path& path);

class Catalog {
 public:
  Catalog() = default;

  // Drops records whose title is empty after cleaning or whose image is missing
  // or a placeholder; fills brand by heuristic when absent. Throws
  // AssetRootMissing when asset_root is not a readable directory.
  static Catalog ingest(std::span<const RawProduct> raw, const std::filesystem::path& asset_root);

  const std::vector<ProductRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const ProductRecord* find(std::string_view id) const;

  // Cosine over lowercased title+description token multisets.
  static double similarity(const ProductRecord& a, const ProductRecord& b);

  // Top-k by similarity, excluding any record with the query's id; ties broken
  // by ascending id. Records with no shared token rank after all overlapping
  // ones, so k >= size() returns everything else.
  std::vector<ProductRecord> similar(const ProductRecord& query, std::size_t k) const;

  // Uniform draw; category comparison is case-insensitive.
  const ProductRecord& sample(Rng& rng, std::optional<std::string_view> category = std::nullopt) const;

  Catalog filtered(const std::function<bool(const ProductRecord&)>& keep) const;

  // Back to ingest form, image paths relative to asset_root.
  std::vector<RawProduct> to_raw(const std::filesystem::path& asset_root) const;

  // Tokens present in the index, for invariant checks.
  std::size_t indexed_record_count() const;

 private:
  void build_index();

  std::vector<ProductRecord> records_;
  std::vector<std::map<std::string, int>> token_counts_;
  std::map<std::string, std::vector<std::size_t>> postings_;
};

}  // namespace screenforge::catalog
