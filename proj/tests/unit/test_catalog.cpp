#include <doctest.h>

#include <set>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/error.hpp"
#include "support/common.hpp"

using namespace screenforge;
using namespace screenforge::catalog;

namespace {

RawProduct raw(std::string id, std::string title, std::string image, std::optional<std::string> brand = std::nullopt) {
  RawProduct p;
  p.id = std::move(id);
  p.title = std::move(title);
  p.description = "";
  p.brand = std::move(brand);
  p.image = std::move(image);
  return p;
}

}  // namespace

TEST_CASE("title cleaning and brand inference") {
  CHECK(clean_title("Amazon Brand - Solimo  Paper Towels") == "Solimo Paper Towels");
  CHECK(clean_title("  Wool   Socks ") == "Wool Socks");
  CHECK(infer_brand("365 Everyday Value, Fragrance Free Lotion") == "365 Everyday Value");
  CHECK(infer_brand("Pinecrest kettle") == "Pinecrest");
  CHECK(infer_brand("small kettle") == "");
}

TEST_CASE("ingest drops untitled, image-less and placeholder records") {
  testing::TempDir dir;
  testing::spit(dir / "a.png", "png");
  testing::spit(dir / "placeholder.png", "png");
  testing::spit(dir / "empty.png", "");
  const std::vector<RawProduct> rows = {
      raw("1", "Cedar Kettle", "a.png"),
      raw("2", "   ", "a.png"),
      raw("3", "Frost Mug", "missing.png"),
      raw("4", "Frost Lantern", "placeholder.png"),
      raw("5", "Golden Scarf", "empty.png"),
      raw("6", "Harbor Candle", "a.png", "Tessaro"),
  };
  const Catalog c = Catalog::ingest(rows, dir.path());
  REQUIRE(c.size() == 2);
  CHECK(c.records()[0].id == "1");
  CHECK(c.records()[0].brand == "Cedar");
  CHECK(c.records()[1].brand == "Tessaro");
  CHECK(c.find("6") != nullptr);
  CHECK(c.find("3") == nullptr);
  CHECK(c.indexed_record_count() == c.size());
  CHECK_THROWS_AS(Catalog::ingest(rows, dir / "nope"), Error);
}

TEST_CASE("ndjson round trip") {
  testing::TempDir dir;
  testing::spit(dir / "a.png", "png");
  auto text = to_ndjson_line(raw("1", "Cedar Kettle", "a.png", "Tessaro")) + "\n\n" +
              to_ndjson_line(raw("2", "Lunar Mug", "a.png")) + "\n";
  const auto rows = parse_ndjson(text);
  REQUIRE(rows.size() == 2);
  const Catalog c = Catalog::ingest(rows, dir.path());
  const auto back = c.to_raw(dir.path());
  REQUIRE(back.size() == 2);
  CHECK(back[0].image == "a.png");
  CHECK(back[0].brand == std::optional<std::string>("Tessaro"));
  CHECK_THROWS_AS(parse_ndjson("{\"id\":\"x\"}\n{bad"), ParseError);
}

TEST_CASE("similarity ranking is symmetric, excludes the query, breaks ties by id") {
  testing::TempDir dir;
  testing::spit(dir / "a.png", "png");
  const Catalog c = Catalog::ingest(std::vector<RawProduct>{raw("a", "Red Wool Socks", "a.png"), raw("b", "Red Wool Hat", "a.png"),
                                                            raw("c", "Blue Wool Socks", "a.png"), raw("d", "Garden Hose", "a.png"),
                                                            raw("e", "Red Wool Hat", "a.png")},
                                    dir.path());
  const auto& q = *c.find("a");
  CHECK(Catalog::similarity(q, *c.find("b")) == doctest::Approx(Catalog::similarity(*c.find("b"), q)));
  CHECK(Catalog::similarity(q, q) == doctest::Approx(1.0));
  CHECK(Catalog::similarity(q, *c.find("d")) == 0.0);
  const auto top = c.similar(q, 10);
  REQUIRE(top.size() == 4);
  // b, c and e each share two of three tokens; ties go by id.
  CHECK(top[0].id == "b");
  CHECK(top[1].id == "c");
  CHECK(top[2].id == "e");
  CHECK(top[3].id == "d");
}

TEST_CASE("fixture catalog ingests completely") {
  const auto rows = load_ndjson(testing::fixtures() / "catalog" / "products.ndjson");
  const Catalog c = Catalog::ingest(rows, testing::fixtures() / "catalog");
  CHECK(c.size() == rows.size());
  CHECK(c.size() == 200);
  std::set<std::string> titles;
  for (const auto& r : c.records()) titles.insert(r.title);
  CHECK(titles.size() == c.size());
}
