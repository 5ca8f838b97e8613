#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/catalog/catalog.hpp"
#include "screenforge/configgen/config.hpp"
#include "screenforge/dataset/export.hpp"
#include "screenforge/error.hpp"
#include "screenforge/dataset/split.hpp"
#include "screenforge/fill/planner.hpp"
#include "screenforge/render/harness.hpp"
#include "screenforge/review/service.hpp"
#include "screenforge/templating/template.hpp"

namespace screenforge::pipeline {

namespace fs = std::filesystem;

// Workspace layout:
//   split.json
//   configs/<layout>/<variant>.json
//   samples/<layout>/<variant>/<fill>/{page.html, image.png, annotations.json, .done}
// Records store image_ref relative to the workspace root.
struct Workspace {
  fs::path root;

  fs::path split_file() const { return root / "split.json"; }
  fs::path configs_dir() const { return root / "configs"; }
  fs::path samples_dir() const { return root / "samples"; }
  fs::path sample_dir(const SampleId& id) const;
};

struct PipelineConfig {
  fs::path layouts_dir;
  fs::path catalog_path;
  fs::path asset_root;  // defaults to the catalog's directory
  fs::path workspace;
  fs::path export_dir;  // defaults to <workspace>/export
  std::uint64_t seed = 42;
  int variants = 5;
  fill::Density density = fill::Density::every();
  render::Viewport viewport;
  dataset::SplitStrategy strategy;
  dataset::ExportFormat format = dataset::ExportFormat::coco;
  dataset::ClassMode classes = dataset::ClassMode::fine;
  int jobs = 1;
  fs::path browser;  // empty: $SCREENFORGE_BROWSER
  fs::path extractor;  // empty: the bundled extractor script

  // Echoed into manifests; paths are given as configured.
  nlohmann::json to_json() const;
};

std::vector<templating::LayoutTemplate> load_layouts(const fs::path& dir);
std::vector<dataset::LayoutInfo> layout_infos(const std::vector<templating::LayoutTemplate>& layouts);
catalog::Catalog load_catalog(const fs::path& ndjson, const fs::path& asset_root = {});

using ConfigMap = std::map<std::string, std::vector<configgen::DataConfig>>;

// Configs for every (layout, variant). With an assignment, train layouts draw
// from the train pool partition and test layouts from the test partition.
ConfigMap gen_configs(const Workspace& ws, const std::vector<templating::LayoutTemplate>& layouts,
                      const catalog::Catalog& catalog, std::uint64_t seed, int variants,
                      const dataset::SplitAssignment* assignment);
ConfigMap read_configs(const Workspace& ws, const std::vector<templating::LayoutTemplate>& layouts);

struct SampleJob {
  const templating::LayoutTemplate* layout = nullptr;
  configgen::DataConfig config;
  SampleId id;
  fill::FillState state;
  templating::PageDocument doc;
};

// Every (layout, variant, fill state) in id order, instantiated.
std::vector<SampleJob> plan_samples(const std::vector<templating::LayoutTemplate>& layouts, const ConfigMap& configs,
                                    fill::Density density);

// Fill invariant messages for one instantiated job, prefixed with its id.
std::vector<std::string> readback_violations(const SampleJob& job);

// The same check against the control values the rendered page reported.
std::vector<std::string> live_readback_violations(const SampleJob& job, const nlohmann::json& raw_annotations);

struct RenderStats {
  std::size_t planned = 0;
  std::size_t rendered = 0;
  std::size_t resumed = 0;  // skipped because a done marker was present
  std::size_t failed = 0;
  bool aborted = false;
  std::vector<std::string> errors;
  std::optional<Errc> first_error;
  std::vector<std::string> readback_violations;
};

// Renders jobs lacking a done marker, writing page, image, record and marker
// in that order. Failed samples are reported and left unmarked.
RenderStats render_samples(const Workspace& ws, const std::vector<SampleJob>& jobs, render::Renderer& renderer,
                           const render::Viewport& viewport, int parallelism);

// Finalizes one render into a sample record.
AnnotatedSample to_sample(const SampleJob& job, const render::RenderResult& result, const std::string& image_ref);

// Records under samples/ that carry a done marker, in id order.
std::vector<AnnotatedSample> load_samples(const Workspace& ws);

dataset::SplitAssignment read_split(const Workspace& ws);
void write_split(const Workspace& ws, const dataset::SplitAssignment& a);

struct RunSummary {
  std::size_t layouts = 0;
  std::size_t configs = 0;
  RenderStats render;
  dataset::ExportSummary exported;
  std::vector<dataset::LeakageFinding> leakage;
};

// split -> gen-configs -> render -> export. Stops before exporting when the
// leakage report is non-empty.
RunSummary run_all(const PipelineConfig& config);

// Previews for the review loop: the layout re-read from disk, variant 0,
// rendered in its empty, middle partial and full states under
// <workspace>/review/<layout>/<fill>/.
review::PreviewRenderer make_preview_renderer(const PipelineConfig& config, render::Renderer& renderer);

}  // namespace screenforge::pipeline
