#include "screenforge/configgen/config.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <regex>
#include <set>

#include "screenforge/configgen/pools.hpp"
#include "screenforge/error.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/money.hpp"
#include "screenforge/util/rng.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::configgen {

using nlohmann::json;

std::string_view to_string(ValueType t) {
  switch (t) {
    case ValueType::string: return "string";
    case ValueType::currency: return "currency";
    case ValueType::date: return "date";
    case ValueType::image_ref: return "image_ref";
  }
  return "?";
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::synthetic_pii: return "synthetic_pii";
    case Provenance::catalog: return "catalog";
    case Provenance::extracted: return "extracted";
    case Provenance::randomized: return "randomized";
    case Provenance::derived: return "derived";
  }
  return "?";
}

std::string_view to_string(PoolPartition p) {
  switch (p) {
    case PoolPartition::all: return "all";
    case PoolPartition::train: return "train";
    case PoolPartition::test: return "test";
  }
  return "?";
}

namespace {

template <typename E, std::size_t N>
E parse_named(std::string_view text, const std::array<E, N>& options, const char* what) {
  for (E e : options)
    if (to_string(e) == text) return e;
  throw Error(Errc::schema_mismatch, std::string("unknown ") + what + " '" + std::string(text) + "'");
}

const std::array<ValueType, 4> kValueTypes = {ValueType::string, ValueType::currency, ValueType::date,
                                              ValueType::image_ref};
const std::array<Provenance, 5> kProvenances = {Provenance::synthetic_pii, Provenance::catalog, Provenance::extracted,
                                                Provenance::randomized, Provenance::derived};
const std::array<PoolPartition, 3> kPartitions = {PoolPartition::all, PoolPartition::train, PoolPartition::test};

const std::map<char, std::string>& default_charsets() {
  static const std::map<char, std::string> sets = {
      {'#', "0123456789"},
      {'@', "ABCDEFGHIJKLMNOPQRSTUVWXYZ"},
      {'*', "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"},
  };
  return sets;
}

// ---- key vocabulary -------------------------------------------------------

const std::set<std::string>& pii_keys() {
  static const std::set<std::string> keys = {
      "PII_FULLNAME",      "PII_FIRSTNAME",  "PII_LASTNAME",       "PII_STREET",      "PII_STREET2",
      "PII_CITY",          "PII_STATE",      "PII_ZIP",            "PII_COUNTRY",     "PII_CITY_STATE_ZIP",
      "PII_EMAIL",         "PII_PHONE",      "PII_CARD_NUMBER",    "PII_CARD_LAST4",  "PII_CARD_EXPIRY",
      "PII_CARD_CVV",      "PII_CARD_HOLDER", "PII_DELIVERY_INSTRUCTIONS", "PII_SECURITY_CODE",
      "PII_GIFT_RECIPIENT", "PII_GIFT_MESSAGE", "PII_USERNAME",
  };
  return keys;
}

const std::set<std::string>& order_keys() {
  static const std::set<std::string> keys = {"ORDER_ID",       "ORDER_TRACKING", "ORDER_DATE",  "ORDER_DELIVERY_DATE",
                                             "ORDER_SUBTOTAL", "ORDER_TAX",      "ORDER_TOTAL", "SHIPPING_COST",
                                             "TAX_RATE",       "ORDER_ITEM_COUNT"};
  return keys;
}

const std::set<std::string> kDerivedKeys = {"ORDER_SUBTOTAL", "ORDER_TAX", "ORDER_TOTAL", "ORDER_ITEM_COUNT"};

struct ProductKey {
  bool related = false;
  int index = 0;
  std::string field;
};

std::optional<ProductKey> parse_product_key(std::string_view key) {
  static const std::regex re(R"(^(PRODUCT|RELATED)([1-9][0-9]?)_(NAME|BRAND|IMAGE|DESCRIPTION|CATEGORY|PRICE|RATING|REVIEWS|QTY)$)");
  std::cmatch m;
  if (!std::regex_match(key.data(), key.data() + key.size(), m, re)) return std::nullopt;
  return ProductKey{m[1].str() == "RELATED", std::stoi(m[2].str()), m[3].str()};
}

std::string thousands(std::int64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const int len = static_cast<int>(digits.size());
  for (int i = 0; i < len; ++i) {
    if (i > 0 && (len - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string format_date(std::chrono::sys_days day) {
  const std::chrono::year_month_day ymd{day};
  const auto month = pools::month_names()[static_cast<unsigned>(ymd.month()) - 1];
  return std::string(month) + " " + std::to_string(static_cast<unsigned>(ymd.day())) + ", " +
         std::to_string(static_cast<int>(ymd.year()));
}

std::string luhn_card(Rng& rng) {
  std::string digits = rng.bernoulli(0.5) ? "4" : "5" + std::to_string(rng.between(1, 5));
  while (digits.size() < 15) digits.push_back(static_cast<char>('0' + rng.below(10)));
  int sum = 0;
  // Position parity counted from the check digit that will be appended.
  for (int i = static_cast<int>(digits.size()) - 1, pos = 0; i >= 0; --i, ++pos) {
    int d = digits[static_cast<std::size_t>(i)] - '0';
    if (pos % 2 == 0) {
      d *= 2;
      if (d > 9) d -= 9;
    }
    sum += d;
  }
  digits.push_back(static_cast<char>('0' + (10 - sum % 10) % 10));
  return digits.substr(0, 4) + " " + digits.substr(4, 4) + " " + digits.substr(8, 4) + " " + digits.substr(12, 4);
}

std::string pool_name(std::string_view s) { return lower(s); }
std::string pool_name(const std::string& s) { return lower(s); }
std::string pool_name(const pools::CityState& c) { return lower(c.city); }

// Seeded halving of a pool: each partition sees a disjoint half.
template <typename T>
std::vector<T> partition_pool(std::span<const T> pool, std::uint64_t master_seed, std::string_view tag,
                              PoolPartition part) {
  std::vector<T> items(pool.begin(), pool.end());
  if (part == PoolPartition::all) return items;
  // Entries sharing a name (a city in two states) stay on one side, so the
  // halves never share a value.
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& item : items)
    if (seen.insert(pool_name(item)).second) names.push_back(pool_name(item));
  Rng rng(stable_hash(master_seed, {"pool", tag}));
  rng.shuffle(std::span<std::string>(names));
  const std::set<std::string> train(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(names.size() / 2));
  std::vector<T> out;
  for (const auto& item : items)
    if (train.count(pool_name(item)) == (part == PoolPartition::train)) out.push_back(item);
  return out;
}

// Everything a config needs that depends on (master seed, partition) only.
struct Pools {
  std::vector<std::string_view> first;
  std::vector<std::string_view> last;
  std::vector<std::string_view> streets;
  std::vector<pools::CityState> cities;
  std::vector<std::string_view> area_codes;
  catalog::Catalog products;

  Pools(std::uint64_t master_seed, PoolPartition part, const catalog::Catalog& cat)
      : first(partition_pool(pools::first_names(), master_seed, "first", part)),
        last(partition_pool(pools::last_names(), master_seed, "last", part)),
        streets(partition_pool(pools::street_names(), master_seed, "street", part)),
        cities(partition_pool(pools::cities(), master_seed, "city", part)),
        area_codes(partition_pool(pools::area_codes(), master_seed, "area", part)) {
    if (part == PoolPartition::all) {
      products = cat;
      return;
    }
    std::vector<std::string> ids;
    for (const auto& r : cat.records()) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    const auto half = partition_pool(std::span<const std::string>(ids), master_seed, "product", part);
    const std::set<std::string> keep(half.begin(), half.end());
    products = cat.filtered([&](const catalog::ProductRecord& r) { return keep.count(r.id) > 0; });
  }
};

ConfigValue make(ValueType t, std::string v, Provenance p) { return ConfigValue{t, std::move(v), p}; }

class Builder {
 public:
  Builder(const LayoutDataSpec& spec, const Pools& pools, std::uint64_t seed) : spec_(spec), pools_(pools), seed_(seed) {}

  std::map<std::string, ConfigValue> build(const std::set<std::string>& keys) {
    for (const auto& key : keys) {
      if (!has_generator(key, spec_)) throw Error(Errc::missing_generator, "no generation rule for key '" + key + "'");
    }
    for (const auto& [key, value] : spec_.extracted_constants) {
      const bool money = key == "SHIPPING_COST" || key.find("FEE") != std::string::npos;
      out_[key] = make(money ? ValueType::currency : ValueType::string, value, Provenance::extracted);
    }
    if (!out_.count("SHIPPING_COST")) out_["SHIPPING_COST"] = make(ValueType::currency, "0.00", Provenance::extracted);
    if (!out_.count("TAX_RATE")) out_["TAX_RATE"] = make(ValueType::string, "0", Provenance::extracted);

    std::set<int> product_indices;
    int related_max = 0;
    for (const auto& key : keys) {
      if (auto pk = parse_product_key(key)) {
        if (pk->related)
          related_max = std::max(related_max, pk->index);
        else
          product_indices.insert(pk->index);
      }
    }
    if (related_max > 0 && product_indices.empty()) product_indices.insert(1);
    products(product_indices, related_max);

    for (const auto& key : keys) {
      if (out_.count(key) || kDerivedKeys.count(key)) continue;
      if (pii_keys().count(key)) {
        pii(key);
      } else if (spec_.id_formats.count(key) || key == "ORDER_ID" || key == "ORDER_TRACKING") {
        out_[key] = make(ValueType::string, format_id(id_template(key), stable_hash(seed_, {"id", key})),
                         Provenance::derived);
      } else if (key == "ORDER_DATE" || key == "ORDER_DELIVERY_DATE") {
        dates();
      }
    }
    return derive_values(std::move(out_), spec_);
  }

 private:
  Rng rng_for(std::string_view group) const { return Rng(stable_hash(seed_, {group})); }

  IdFormatTemplate id_template(const std::string& key) const {
    auto it = spec_.id_formats.find(key);
    if (it != spec_.id_formats.end()) return it->second;
    return IdFormatTemplate::of(key == "ORDER_TRACKING" ? "1Z****************" : "###-#######-#######");
  }

  void identity() {
    if (identity_done_) return;
    identity_done_ = true;
    Rng rng = rng_for("identity");
    first_ = std::string(rng.pick(std::span<const std::string_view>(pools_.first)));
    last_ = std::string(rng.pick(std::span<const std::string_view>(pools_.last)));
    Rng addr = rng_for("address");
    street_ = std::to_string(addr.between(10, 9899)) + " " +
              std::string(addr.pick(std::span<const std::string_view>(pools_.streets))) + " " +
              std::string(addr.pick(pools::street_suffixes()));
    if (addr.bernoulli(0.3)) street_ += " Suite " + std::to_string(addr.between(100, 999));
    street2_ = "Apt " + std::to_string(addr.between(1, 40)) + std::string(1, static_cast<char>('A' + addr.below(6)));
    const auto& city = addr.pick(std::span<const pools::CityState>(pools_.cities));
    city_ = std::string(city.city);
    state_ = std::string(city.state);
    zip_ = std::to_string(addr.between(10000, 99999));
  }

  void pii(const std::string& key) {
    identity();
    Rng rng = rng_for(key);
    std::string v;
    if (key == "PII_FULLNAME" || key == "PII_CARD_HOLDER") {
      v = first_ + " " + last_;
    } else if (key == "PII_FIRSTNAME") {
      v = first_;
    } else if (key == "PII_LASTNAME") {
      v = last_;
    } else if (key == "PII_STREET") {
      v = street_;
    } else if (key == "PII_STREET2") {
      v = street2_;
    } else if (key == "PII_CITY") {
      v = city_;
    } else if (key == "PII_STATE") {
      v = state_;
    } else if (key == "PII_ZIP") {
      v = zip_;
    } else if (key == "PII_CITY_STATE_ZIP") {
      v = city_ + ", " + state_ + " " + zip_;
    } else if (key == "PII_COUNTRY") {
      v = "United States";
    } else if (key == "PII_EMAIL") {
      v = lower(first_) + "." + lower(last_) + std::to_string(rng.between(1, 99)) + "@" +
          std::string(rng.pick(pools::email_domains()));
    } else if (key == "PII_USERNAME") {
      v = lower(first_.substr(0, 1)) + lower(last_) + std::to_string(rng.between(10, 9999));
    } else if (key == "PII_PHONE") {
      v = "(" + std::string(rng.pick(std::span<const std::string_view>(pools_.area_codes))) + ") " +
          std::to_string(rng.between(200, 999)) + "-" + std::to_string(rng.between(1000, 9999));
    } else if (key == "PII_CARD_NUMBER" || key == "PII_CARD_LAST4") {
      Rng card_rng = rng_for("card");
      const std::string card = luhn_card(card_rng);
      v = key == "PII_CARD_NUMBER" ? card : card.substr(card.size() - 4);
    } else if (key == "PII_CARD_EXPIRY") {
      const auto month = rng.between(1, 12);
      v = (month < 10 ? "0" : "") + std::to_string(month) + "/" + std::to_string(rng.between(26, 32));
    } else if (key == "PII_CARD_CVV") {
      v = std::to_string(rng.between(100, 999));
    } else if (key == "PII_SECURITY_CODE") {
      v = "#" + std::to_string(rng.between(1000, 9999));
    } else if (key == "PII_DELIVERY_INSTRUCTIONS") {
      static constexpr std::string_view spots[] = {"front door", "side door", "back porch", "garage", "mailroom",
                                                   "front desk"};
      v = "Leave at " + std::string(rng.pick(std::span<const std::string_view>(spots))) + ", gate code " +
          std::to_string(rng.between(1000, 9999)) + ", ask for " + first_;
    } else if (key == "PII_GIFT_RECIPIENT" || key == "PII_GIFT_MESSAGE") {
      gift();
      v = key == "PII_GIFT_RECIPIENT" ? recipient_ : message_;
    }
    out_[key] = make(ValueType::string, v, Provenance::synthetic_pii);
  }

  void gift() {
    if (!recipient_.empty()) return;
    Rng rng = rng_for("gift");
    const std::string first(rng.pick(std::span<const std::string_view>(pools_.first)));
    const std::string last(rng.pick(std::span<const std::string_view>(pools_.last)));
    recipient_ = first + " " + last;
    static constexpr std::string_view occasions[] = {"birthday", "anniversary", "graduation", "holidays"};
    std::string item = "gift";
    if (auto it = out_.find("PRODUCT1_BRAND"); it != out_.end() && !it->second.value.empty()) {
      item = it->second.value + " order";
    }
    message_ = "Happy " + std::string(rng.pick(std::span<const std::string_view>(occasions))) + ", " + first +
               "! Hope you enjoy the " + item + ". Love, " + (first_.empty() ? std::string("me") : first_);
  }

  void dates() {
    if (out_.count("ORDER_DATE")) return;
    Rng rng = rng_for("dates");
    using namespace std::chrono;
    const sys_days start = sys_days{year{2019} / January / 1};
    const sys_days order = start + days{rng.between(0, 6 * 365 - 1)};
    const sys_days delivery = order + days{rng.between(1, 10)};
    out_["ORDER_DATE"] = make(ValueType::date, format_date(order), Provenance::synthetic_pii);
    out_["ORDER_DELIVERY_DATE"] = make(ValueType::date, format_date(delivery), Provenance::synthetic_pii);
  }

  void put_product(const std::string& prefix, const catalog::ProductRecord& p, Rng& rng) {
    out_[prefix + "_NAME"] = make(ValueType::string, p.title, Provenance::catalog);
    out_[prefix + "_DESCRIPTION"] = make(ValueType::string, p.description, Provenance::catalog);
    out_[prefix + "_BRAND"] = make(ValueType::string, p.brand, Provenance::extracted);
    out_[prefix + "_CATEGORY"] = make(ValueType::string, p.category, Provenance::extracted);
    out_[prefix + "_IMAGE"] = make(ValueType::image_ref, p.image_ref, Provenance::catalog);
    out_[prefix + "_PRICE"] = make(ValueType::currency, Cents(rng.between(199, 19999)).str(), Provenance::randomized);
    const auto rating = rng.between(30, 50);
    out_[prefix + "_RATING"] =
        make(ValueType::string, std::to_string(rating / 10) + "." + std::to_string(rating % 10), Provenance::randomized);
    out_[prefix + "_REVIEWS"] = make(ValueType::string, thousands(rng.between(1, 50000)), Provenance::randomized);
    out_[prefix + "_QTY"] = make(ValueType::string, std::to_string(rng.between(1, 3)), Provenance::randomized);
  }

  void products(const std::set<int>& indices, int related_max) {
    if (indices.empty()) return;
    const auto& cat = pools_.products;
    if (cat.empty()) throw Error(Errc::no_eligible_product, "layout needs product keys but the catalog is empty");
    Rng pick = rng_for("products");
    std::set<std::string> used;
    const catalog::ProductRecord* anchor = nullptr;
    for (int n : indices) {
      const catalog::ProductRecord* chosen = &cat.sample(pick);
      for (int tries = 0; used.count(chosen->id) && tries < 32; ++tries) chosen = &cat.sample(pick);
      used.insert(chosen->id);
      if (!anchor) anchor = chosen;
      Rng rng = rng_for("product" + std::to_string(n));
      put_product("PRODUCT" + std::to_string(n), *chosen, rng);
    }
    if (related_max == 0) return;
    auto neighbours = cat.similar(*anchor, static_cast<std::size_t>(related_max) + used.size());
    std::erase_if(neighbours, [&](const catalog::ProductRecord& r) { return used.count(r.id) > 0; });
    for (int n = 1; n <= related_max; ++n) {
      const catalog::ProductRecord& r =
          static_cast<std::size_t>(n - 1) < neighbours.size() ? neighbours[static_cast<std::size_t>(n - 1)]
                                                               : cat.sample(pick);
      Rng rng = rng_for("related" + std::to_string(n));
      put_product("RELATED" + std::to_string(n), r, rng);
    }
  }

  const LayoutDataSpec& spec_;
  const Pools& pools_;
  std::uint64_t seed_;
  std::map<std::string, ConfigValue> out_;
  bool identity_done_ = false;
  std::string first_, last_, street_, street2_, city_, state_, zip_, recipient_, message_;
};

}  // namespace

const std::string& DataConfig::at(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw Error(Errc::missing_key, "config has no value for '" + key + "'");
  return it->second.value;
}

IdFormatTemplate IdFormatTemplate::of(std::string pattern) { return IdFormatTemplate{std::move(pattern), {}}; }

std::set<std::string> LayoutDataSpec::all_keys() const {
  std::set<std::string> keys = required_keys;
  for (const auto& [group, ks] : optional_keys) keys.insert(ks.begin(), ks.end());
  return keys;
}

std::vector<std::string> check_data_spec(const LayoutDataSpec& spec) {
  std::vector<std::string> issues;
  for (const auto& [key, value] : spec.extracted_constants) {
    if (key == "TAX_RATE") {
      try {
        const auto rate = DecimalRate::parse(value);
        if (rate.numerator < 0 || rate.approx() > 0.25) issues.push_back("TAX_RATE " + value + " outside [0, 0.25]");
      } catch (const Error&) {
        issues.push_back("TAX_RATE '" + value + "' is not a decimal");
      }
    } else if (key == "SHIPPING_COST" || key.find("FEE") != std::string::npos) {
      try {
        if (Cents::parse(value) < Cents(0)) issues.push_back(key + " is negative");
      } catch (const Error&) {
        issues.push_back(key + " '" + value + "' is not an amount");
      }
    }
  }
  for (const auto& f : spec.optional_fields) {
    if (!(f.probability >= 0.0 && f.probability <= 1.0))
      issues.push_back("optional field '" + f.id + "' probability outside [0, 1]");
  }
  for (const auto& [key, tmpl] : spec.id_formats) {
    try {
      (void)format_id(tmpl, 0);
    } catch (const Error& e) {
      issues.push_back("id format for " + key + ": " + e.what());
    }
  }
  return issues;
}

bool has_generator(std::string_view key, const LayoutDataSpec& spec) {
  const std::string k(key);
  return spec.extracted_constants.count(k) || spec.id_formats.count(k) || pii_keys().count(k) ||
         order_keys().count(k) || parse_product_key(key).has_value();
}

bool is_identifying_key(std::string_view key) {
  static const std::set<std::string> identifying = {
      "PII_FULLNAME",   "PII_FIRSTNAME",      "PII_LASTNAME",      "PII_STREET",      "PII_CITY",
      "PII_CITY_STATE_ZIP", "PII_EMAIL",      "PII_PHONE",         "PII_CARD_NUMBER", "PII_CARD_HOLDER",
      "PII_GIFT_RECIPIENT", "PII_GIFT_MESSAGE", "PII_USERNAME",    "PII_DELIVERY_INSTRUCTIONS",
      "ORDER_ID",       "ORDER_TRACKING",
  };
  if (identifying.count(std::string(key))) return true;
  if (auto pk = parse_product_key(key)) return pk->field == "NAME" || pk->field == "IMAGE";
  return false;
}

std::string format_id(const IdFormatTemplate& tmpl, std::uint64_t seed) {
  if (tmpl.pattern.empty()) throw Error(Errc::bad_pattern, "empty id pattern");
  std::map<char, std::string> sets = default_charsets();
  for (const auto& [wildcard, chars] : tmpl.charsets) {
    if (!sets.count(wildcard)) {
      throw Error(Errc::bad_pattern, std::string("unknown wildcard '") + wildcard + "' in charset overrides");
    }
    if (chars.empty()) throw Error(Errc::bad_pattern, std::string("empty charset for '") + wildcard + "'");
    sets[wildcard] = chars;
  }
  Rng rng(seed);
  std::string out;
  out.reserve(tmpl.pattern.size());
  for (std::size_t i = 0; i < tmpl.pattern.size(); ++i) {
    const char c = tmpl.pattern[i];
    if (c == '\\') {
      if (i + 1 >= tmpl.pattern.size()) throw Error(Errc::bad_pattern, "dangling escape in '" + tmpl.pattern + "'");
      const char next = tmpl.pattern[++i];
      if (next != '\\' && !sets.count(next)) {
        throw Error(Errc::bad_pattern, std::string("unknown wildcard '\\") + next + "' in '" + tmpl.pattern + "'");
      }
      out.push_back(next);
      continue;
    }
    auto it = sets.find(c);
    if (it == sets.end()) {
      out.push_back(c);
    } else {
      out.push_back(it->second[static_cast<std::size_t>(rng.below(it->second.size()))]);
    }
  }
  return out;
}

std::map<std::string, ConfigValue> derive_values(std::map<std::string, ConfigValue> values, const LayoutDataSpec& spec) {
  auto lookup = [&](const std::string& key) -> std::optional<std::string> {
    if (auto it = values.find(key); it != values.end()) return it->second.value;
    if (auto it = spec.extracted_constants.find(key); it != spec.extracted_constants.end()) return it->second;
    return std::nullopt;
  };
  Cents subtotal(0);
  std::int64_t item_count = 0;
  for (const auto& [key, value] : values) {
    auto pk = parse_product_key(key);
    if (!pk || pk->related || pk->field != "PRICE") continue;
    const Cents price = Cents::parse(value.value);
    const std::string qty_text = lookup("PRODUCT" + std::to_string(pk->index) + "_QTY").value_or("1");
    const std::int64_t qty = std::stoll(qty_text);
    if (price < Cents(0)) throw Error(Errc::negative_amount, key + " = " + value.value);
    if (qty < 0) throw Error(Errc::negative_amount, "PRODUCT" + std::to_string(pk->index) + "_QTY = " + qty_text);
    subtotal += price * qty;
    item_count += qty;
  }
  const Cents shipping = Cents::parse(lookup("SHIPPING_COST").value_or("0"));
  const DecimalRate rate = DecimalRate::parse(lookup("TAX_RATE").value_or("0"));
  if (shipping < Cents(0)) throw Error(Errc::negative_amount, "SHIPPING_COST = " + shipping.str());
  if (rate.numerator < 0) throw Error(Errc::negative_amount, "TAX_RATE = " + rate.str());
  const Cents tax = apply_rate_half_even(subtotal, rate);
  values["ORDER_SUBTOTAL"] = make(ValueType::currency, subtotal.str(), Provenance::derived);
  values["ORDER_TAX"] = make(ValueType::currency, tax.str(), Provenance::derived);
  values["ORDER_TOTAL"] = make(ValueType::currency, (subtotal + shipping + tax).str(), Provenance::derived);
  values["ORDER_ITEM_COUNT"] = make(ValueType::string, std::to_string(item_count), Provenance::derived);
  return values;
}

std::uint64_t config_seed(std::uint64_t master_seed, std::string_view layout_id, int variant_index) {
  return stable_hash(master_seed, {layout_id, std::to_string(variant_index)});
}

DataConfig generate_config(const LayoutDataSpec& spec, const catalog::Catalog& catalog, std::uint64_t master_seed,
                           std::string_view layout_id, int variant_index, const GenerateOptions& options) {
  const Pools pools(master_seed, options.partition, catalog);
  DataConfig config;
  config.layout_id = std::string(layout_id);
  config.variant_index = variant_index;
  config.seed = config_seed(master_seed, layout_id, variant_index);
  config.partition = options.partition;
  for (const auto& field : spec.optional_fields) {
    Rng rng(stable_hash(config.seed, {"optional", field.id}));
    if (rng.bernoulli(field.probability)) config.included_optional_fields.insert(field.id);
  }
  Builder builder(spec, pools, config.seed);
  config.values = builder.build(spec.all_keys());
  return config;
}

// ---- serialization ----------------------------------------------------------

json config_to_json(const DataConfig& c) {
  json values = json::object();
  for (const auto& [key, v] : c.values) {
    values[key] = json{{"type", to_string(v.type)}, {"value", v.value}, {"provenance", to_string(v.provenance)}};
  }
  return json{{"schema", 1},
              {"layout_id", c.layout_id},
              {"variant_index", c.variant_index},
              {"seed", c.seed},
              {"partition", to_string(c.partition)},
              {"included_optional_fields", c.included_optional_fields},
              {"values", std::move(values)}};
}

DataConfig config_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != 1) throw Error(Errc::schema_mismatch, "unsupported config schema");
    DataConfig c;
    c.layout_id = j.at("layout_id").get<std::string>();
    c.variant_index = j.at("variant_index").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.partition = parse_named(j.at("partition").get<std::string>(), kPartitions, "partition");
    c.included_optional_fields = j.at("included_optional_fields").get<std::set<std::string>>();
    for (const auto& [key, v] : j.at("values").items()) {
      c.values[key] = ConfigValue{parse_named(v.at("type").get<std::string>(), kValueTypes, "value type"),
                                  v.at("value").get<std::string>(),
                                  parse_named(v.at("provenance").get<std::string>(), kProvenances, "provenance")};
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(Errc::schema_mismatch, std::string("config: ") + e.what());
  }
}

std::filesystem::path config_path(const std::filesystem::path& root, std::string_view layout_id, int variant_index) {
  return root / "configs" / std::string(layout_id) / (std::to_string(variant_index) + ".json");
}

void write_config(const std::filesystem::path& root, const DataConfig& config) {
  write_file_atomic(config_path(root, config.layout_id, config.variant_index), config_to_json(config).dump(2) + "\n");
}

DataConfig read_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

json data_spec_to_json(const LayoutDataSpec& spec) {
  json optional = json::array();
  for (const auto& f : spec.optional_fields) optional.push_back(json{{"id", f.id}, {"probability", f.probability}});
  json formats = json::object();
  for (const auto& [key, t] : spec.id_formats) {
    json sets = json::object();
    for (const auto& [c, chars] : t.charsets) sets[std::string(1, c)] = chars;
    formats[key] = json{{"pattern", t.pattern}, {"charsets", sets}};
  }
  return json{{"required_keys", spec.required_keys},
              {"optional_fields", optional},
              {"optional_keys", spec.optional_keys},
              {"extracted_constants", spec.extracted_constants},
              {"id_formats", formats}};
}

LayoutDataSpec data_spec_from_json(const json& j) {
  LayoutDataSpec spec;
  try {
    if (j.contains("required_keys")) spec.required_keys = j.at("required_keys").get<std::set<std::string>>();
    if (j.contains("optional_fields")) {
      for (const auto& f : j.at("optional_fields")) {
        if (f.is_string()) {
          spec.optional_fields.push_back({f.get<std::string>(), 0.5});
        } else {
          spec.optional_fields.push_back({f.at("id").get<std::string>(), f.value("probability", 0.5)});
        }
      }
    }
    if (j.contains("optional_keys"))
      spec.optional_keys = j.at("optional_keys").get<std::map<std::string, std::set<std::string>>>();
    if (j.contains("extracted_constants")) {
      for (const auto& [key, v] : j.at("extracted_constants").items())
        spec.extracted_constants[key] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (j.contains("id_formats")) {
      for (const auto& [key, v] : j.at("id_formats").items()) {
        IdFormatTemplate t;
        if (v.is_string()) {
          t.pattern = v.get<std::string>();
        } else {
          t.pattern = v.at("pattern").get<std::string>();
          if (v.contains("charsets")) {
            for (const auto& [c, chars] : v.at("charsets").items()) {
              if (c.size() != 1) throw Error(Errc::bad_pattern, "charset key '" + c + "' must be one character");
              t.charsets[c[0]] = chars.get<std::string>();
            }
          }
        }
        spec.id_formats[key] = std::move(t);
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::schema_mismatch, std::string("data_spec: ") + e.what());
  }
  std::sort(spec.optional_fields.begin(), spec.optional_fields.end(),
            [](const OptionalField& a, const OptionalField& b) { return a.id < b.id; });
  return spec;
}

}  // namespace screenforge::configgen
