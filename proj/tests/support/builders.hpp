#pragma once

#include <string>
#include <vector>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/configgen/config.hpp"
#include "screenforge/dataset/split.hpp"
#include "support/common.hpp"

namespace testing {

inline const screenforge::catalog::Catalog& fixture_catalog() {
  using namespace screenforge::catalog;
  static const Catalog c = Catalog::ingest(load_ndjson(fixtures() / "catalog" / "products.ndjson"), fixtures() / "catalog");
  return c;
}

// A cart page spec with `items` products and the given shipping and tax rate.
inline screenforge::configgen::LayoutDataSpec cart_spec(int items, const std::string& shipping, const std::string& rate) {
  screenforge::configgen::LayoutDataSpec spec;
  for (int i = 1; i <= items; ++i) {
    for (const char* f : {"NAME", "PRICE", "QTY", "IMAGE"}) spec.required_keys.insert("PRODUCT" + std::to_string(i) + "_" + f);
  }
  for (const char* k : {"ORDER_SUBTOTAL", "ORDER_TAX", "ORDER_TOTAL", "SHIPPING_COST", "PII_FULLNAME", "PII_EMAIL"})
    spec.required_keys.insert(k);
  spec.extracted_constants["SHIPPING_COST"] = shipping;
  spec.extracted_constants["TAX_RATE"] = rate;
  return spec;
}

// 408 stubs: brand "bigshop" owns 56 layouts, page type "gifting" 20 of them
// spread over other brands.
inline std::vector<screenforge::dataset::LayoutInfo> registry_408() {
  std::vector<screenforge::dataset::LayoutInfo> out;
  const char* types[] = {"cart", "checkout", "receipt", "sign_in", "order_history"};
  for (int i = 0; i < 408; ++i) {
    screenforge::dataset::LayoutInfo l;
    l.layout_id = "L" + std::to_string(1000 + i);
    l.brand = i < 56 ? "bigshop" : "brand" + std::to_string(i % 23);
    l.page_type = (i >= 56 && i < 76) ? "gifting" : types[i % 5];
    out.push_back(l);
  }
  return out;
}

}  // namespace testing
