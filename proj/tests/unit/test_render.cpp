#include <doctest.h>

#include <cmath>

#include "screenforge/error.hpp"
#include "screenforge/render/harness.hpp"
#include "support/common.hpp"
#include "support/geometry_run.hpp"

using namespace screenforge;
using namespace screenforge::render;

TEST_CASE("viewport parsing") {
  CHECK(Viewport::parse("1400x900").width == 1400);
  CHECK(Viewport::parse("1400x900").height == 900);
  CHECK(Viewport::parse("320x200").str() == "320x200");
  CHECK_THROWS_AS(Viewport::parse("319x200"), Error);
  CHECK_THROWS_AS(Viewport::parse("1400"), Error);
  CHECK_THROWS_AS(Viewport::parse("axb"), Error);
}

TEST_CASE("png dimensions from the header") {
  std::string png = "\x89PNG\r\n\x1a\n";
  png += std::string("\0\0\0\x0dIHDR", 8);
  png += std::string("\0\0\x05\x78\0\0\x03\x84", 8);
  png += std::string(9, '\0');
  CHECK(png_dimensions(png) == ImageDims{1400, 900});
  CHECK_THROWS_AS(png_dimensions("GIF89a"), Error);
  CHECK_THROWS_AS(png_dimensions(png.substr(0, 12)), Error);
}

TEST_CASE("extraction geometry against rendered fixtures") {
  if (!testing::have_browser()) {
    MESSAGE("SCREENFORGE_BROWSER not set; skipping");
    return;
  }
  const auto boxes = testing::render_geometry_fixtures();
  REQUIRE(boxes.size() == 4);

  // 19 square glyphs of 20px at (100, 50).
  const auto* abs = testing::find_key(boxes.at("geo_absolute"), "ORDER_ID");
  REQUIRE(abs);
  CHECK(std::abs(abs->box.x - 100) <= 1);
  CHECK(std::abs(abs->box.y - 50) <= 1);
  CHECK(std::abs(abs->box.w - 380) <= 1);
  CHECK(std::abs(abs->box.h - 20) <= 1);
  CHECK(abs->visibility == Visibility::full);

  // The modal covers the tracking number but not the order id.
  const auto& modal = boxes.at("geo_modal");
  CHECK(testing::find_key(modal, "ORDER_ID"));
  CHECK_FALSE(testing::find_key(modal, "ORDER_TRACKING"));

  // An overlay from x = 300 cuts the order id; the clip edge lands within one
  // visibility cell (a third of the box width) of the overlay edge.
  const auto* half = testing::find_key(boxes.at("geo_half"), "ORDER_ID");
  REQUIRE(half);
  CHECK(half->visibility == Visibility::clipped);
  CHECK(std::abs(half->box.x - 100) <= 1);
  CHECK(half->box.right() < 480);
  CHECK(std::abs(half->box.right() - 300) <= 380.0 / 3.0);

  // Eighteen glyphs in a 140px column wrap into three lines.
  const auto& wrap = boxes.at("geo_wrap");
  int lines = 0;
  for (const auto& a : wrap) lines += a.source_key == "ORDER_TRACKING";
  CHECK(lines == 3);
  for (int l = 0; l < 3; ++l) {
    const auto* a = testing::find_key(wrap, "ORDER_TRACKING", l);
    REQUIRE(a);
    CHECK(std::abs(a->box.h - 20) <= 1);
    if (l < 2) CHECK(std::abs(a->box.w - 140) <= 1);
    else CHECK(std::abs(a->box.w - 80) <= 1);
    if (l > 0) CHECK(a->box.y > testing::find_key(wrap, "ORDER_TRACKING", l - 1)->box.y);
  }
}

TEST_CASE("render batch keeps job order and reports failures per item") {
  if (!testing::have_browser()) {
    MESSAGE("SCREENFORGE_BROWSER not set; skipping");
    return;
  }
  testing::TempDir dir;
  Renderer renderer(RendererOptions{});
  std::vector<RenderJob> jobs;
  for (int i = 0; i < 4; ++i) {
    RenderJob j;
    j.sample_id = {"l" + std::to_string(i), 0, FillTag::full()};
    j.document = "<html><body style=\"margin:0\"><div style=\"height:" + std::to_string(1000 + 100 * i) + "px\">x</div></body></html>";
    j.page_path = dir / ("p" + std::to_string(i) + ".html");
    j.viewport = Viewport{800, 600};
    jobs.push_back(j);
  }
  std::vector<std::size_t> seen;
  const auto outcome = render_batch(renderer, jobs, 3, [&](std::size_t i, const BatchItem&) { seen.push_back(i); });
  CHECK_FALSE(outcome.aborted);
  REQUIRE(outcome.items.size() == 4);
  CHECK(seen == std::vector<std::size_t>{0, 1, 2, 3});
  for (int i = 0; i < 4; ++i) {
    REQUIRE(outcome.items[static_cast<std::size_t>(i)].result);
    const auto& r = *outcome.items[static_cast<std::size_t>(i)].result;
    CHECK(r.image_dims.width == 800);
    CHECK(r.image_dims.height == 1000 + 100 * i);
    CHECK(png_dimensions(r.image) == r.image_dims);
  }
  // Same document twice gives the same bytes.
  CHECK(renderer.render(jobs[0]).image == outcome.items[0].result->image);
}
