#pragma once

#include <map>
#include <string>
#include <vector>

#include "screenforge/pipeline/pipeline.hpp"
#include "support/common.hpp"

namespace testing {

// Renders every geometry fixture in its full state and finalizes the boxes.
inline std::map<std::string, std::vector<screenforge::Annotation>> render_geometry_fixtures() {
  using namespace screenforge;
  TempDir ws_dir;
  const pipeline::Workspace ws{ws_dir.path()};
  const auto layouts = pipeline::load_layouts(fixtures() / "geometry");
  const auto catalog = pipeline::load_catalog(fixtures() / "catalog" / "products.ndjson");
  const auto configs = pipeline::gen_configs(ws, layouts, catalog, 42, 1, nullptr);
  const auto jobs = pipeline::plan_samples(layouts, configs, fill::Density::every());
  render::RendererOptions ro;
  render::Renderer renderer(ro);
  std::map<std::string, std::vector<Annotation>> out;
  for (const auto& job : jobs) {
    if (job.id.fill.kind != FillKind::full) continue;
    render::RenderJob rj;
    rj.sample_id = job.id;
    rj.document = job.doc.html;
    rj.page_path = ws_dir / (job.id.layout_id + ".html");
    rj.viewport = render::Viewport{1000, 800};
    const auto result = renderer.render(rj);
    out[job.id.layout_id] = pipeline::to_sample(job, result, "x.png").annotations;
  }
  return out;
}

inline const screenforge::Annotation* find_key(const std::vector<screenforge::Annotation>& anns, const std::string& key, int line = 0) {
  for (const auto& a : anns)
    if (a.source_key == key && a.line_index == line) return &a;
  return nullptr;
}

}  // namespace testing
