#include "screenforge/pipeline/pipeline.hpp"

#include <algorithm>
#include <system_error>

#include "screenforge/core/record.hpp"
#include "screenforge/error.hpp"
#include "screenforge/geometry/finalize.hpp"
#include "screenforge/util/fs.hpp"

namespace screenforge::pipeline {

using nlohmann::json;

namespace {

constexpr const char* kDoneMarker = ".done";

std::string relative_to(const fs::path& p, const fs::path& root) { return p.lexically_relative(root).generic_string(); }

fs::path sample_dir_for(const fs::path& base, const SampleId& id) {
  return base / id.layout_id / std::to_string(id.variant_index) / id.fill.str();
}

render::RendererOptions renderer_options(const PipelineConfig& config) {
  render::RendererOptions o;
  o.browser.executable = config.browser.empty() ? render::default_browser() : config.browser;
  if (!config.extractor.empty()) o.extractor_source = read_file(config.extractor);
  return o;
}

}  // namespace

fs::path Workspace::sample_dir(const SampleId& id) const { return sample_dir_for(samples_dir(), id); }

json PipelineConfig::to_json() const {
  json j{{"layouts", layouts_dir.generic_string()},
              {"catalog", catalog_path.generic_string()},
              {"seed", seed},
              {"variants", variants},
              {"partials", density.str()},
              {"viewport", viewport.str()},
              {"strategy", strategy.str()},
              {"stratify_brand", strategy.stratify_brand},
              {"format", dataset::to_string(format)},
              {"classes", dataset::ClassMap(classes).name()}};
  if (!extractor.empty()) j["extractor"] = extractor.generic_string();
  return j;
}

std::vector<templating::LayoutTemplate> load_layouts(const fs::path& dir) {
  std::vector<templating::LayoutTemplate> out;
  for (const auto& d : templating::list_layout_dirs(dir)) out.push_back(templating::load_template(d));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.layout_id < b.layout_id; });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].layout_id == out[i - 1].layout_id)
      throw Error(Errc::invalid_argument, "duplicate layout id '" + out[i].layout_id + "'");
  return out;
}

std::vector<dataset::LayoutInfo> layout_infos(const std::vector<templating::LayoutTemplate>& layouts) {
  std::vector<dataset::LayoutInfo> out;
  for (const auto& t : layouts) out.push_back({t.layout_id, t.brand, t.page_type});
  return out;
}

catalog::Catalog load_catalog(const fs::path& ndjson, const fs::path& asset_root) {
  const auto raw = catalog::load_ndjson(ndjson);
  return catalog::Catalog::ingest(raw, asset_root.empty() ? ndjson.parent_path() : asset_root);
}

ConfigMap gen_configs(const Workspace& ws, const std::vector<templating::LayoutTemplate>& layouts,
                      const catalog::Catalog& catalog, std::uint64_t seed, int variants,
                      const dataset::SplitAssignment* assignment) {
  if (variants < 1) throw Error(Errc::invalid_argument, "variants must be >= 1");
  ConfigMap out;
  for (const auto& t : layouts) {
    configgen::GenerateOptions opts;
    if (assignment) {
      const auto side = assignment->split_of(t.layout_id);
      if (side) opts.partition = *side == "train" ? configgen::PoolPartition::train : configgen::PoolPartition::test;
    }
    auto& list = out[t.layout_id];
    for (int v = 0; v < variants; ++v) {
      list.push_back(configgen::generate_config(t.data_spec, catalog, seed, t.layout_id, v, opts));
      configgen::write_config(ws.root, list.back());
    }
  }
  return out;
}

ConfigMap read_configs(const Workspace& ws, const std::vector<templating::LayoutTemplate>& layouts) {
  ConfigMap out;
  for (const auto& t : layouts) {
    auto& list = out[t.layout_id];
    for (int v = 0;; ++v) {
      const auto path = configgen::config_path(ws.root, t.layout_id, v);
      std::error_code ec;
      if (!fs::exists(path, ec)) break;
      list.push_back(configgen::read_config(path));
    }
    if (list.empty()) throw Error(Errc::io_error, "no configs for layout '" + t.layout_id + "'; run gen-configs");
  }
  return out;
}

std::vector<SampleJob> plan_samples(const std::vector<templating::LayoutTemplate>& layouts, const ConfigMap& configs,
                                    fill::Density density) {
  std::vector<SampleJob> out;
  for (const auto& t : layouts) {
    auto it = configs.find(t.layout_id);
    if (it == configs.end()) throw Error(Errc::missing_key, "no configs for layout '" + t.layout_id + "'");
    for (const auto& config : it->second) {
      const auto plan = fill::plan_for(t, config, density);
      for (const FillTag& tag : plan.states) {
        SampleJob job;
        job.layout = &t;
        job.config = config;
        job.id = SampleId{t.layout_id, config.variant_index, tag};
        job.state = fill::resolve_state(tag, t, config);
        job.doc = templating::instantiate(t, config, job.state);
        out.push_back(std::move(job));
      }
    }
  }
  return out;
}

std::vector<std::string> readback_violations(const SampleJob& job) {
  std::vector<std::string> out;
  for (auto& m : fill::check_fill_readback(templating::read_field_values(job.doc.html), job.state, *job.layout, job.config))
    out.push_back(job.id.str() + ": " + m);
  return out;
}

std::vector<std::string> live_readback_violations(const SampleJob& job, const nlohmann::json& raw_annotations) {
  std::vector<std::string> out;
  std::map<std::string, std::string> shown;
  const auto it = raw_annotations.find("fields");
  if (it == raw_annotations.end() || !it->is_object()) {
    out.push_back(job.id.str() + ": page reported no field values");
    return out;
  }
  for (const auto& [id, v] : it->items()) shown[id] = v.is_string() ? v.get<std::string>() : v.dump();
  for (auto& m : fill::check_fill_readback(shown, job.state, *job.layout, job.config))
    out.push_back(job.id.str() + ": rendered: " + m);
  return out;
}

AnnotatedSample to_sample(const SampleJob& job, const render::RenderResult& result, const std::string& image_ref) {
  AnnotatedSample s;
  s.id = job.id;
  s.image_ref = image_ref;
  s.config_seed = job.config.seed;
  s.image_dims = result.image_dims;
  s.annotations = geometry::finalize(result.raw_annotations, result.image_dims);
  return s;
}

RenderStats render_samples(const Workspace& ws, const std::vector<SampleJob>& jobs, render::Renderer& renderer,
                           const render::Viewport& viewport, int parallelism) {
  RenderStats stats;
  stats.planned = jobs.size();
  std::vector<std::size_t> todo;
  std::vector<render::RenderJob> render_jobs;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    for (auto& v : readback_violations(jobs[i])) stats.readback_violations.push_back(std::move(v));
    const fs::path dir = ws.sample_dir(jobs[i].id);
    std::error_code ec;
    if (fs::exists(dir / kDoneMarker, ec)) {
      ++stats.resumed;
      continue;
    }
    todo.push_back(i);
    render_jobs.push_back({jobs[i].id, jobs[i].doc.html, dir / "page.html", viewport, true});
  }
  const auto outcome = render::render_batch(renderer, render_jobs, parallelism, [&](std::size_t k, const render::BatchItem& item) {
    const SampleJob& job = jobs[todo[k]];
    if (item.skipped) return;
    if (item.error) {
      ++stats.failed;
      stats.errors.push_back(job.id.str() + ": " + item.error->what());
      if (!stats.first_error) stats.first_error = item.error->code();
      return;
    }
    const fs::path dir = ws.sample_dir(job.id);
    for (auto& v : live_readback_violations(job, item.result->raw_annotations)) stats.readback_violations.push_back(std::move(v));
    try {
      const auto sample = to_sample(job, *item.result, relative_to(dir / "image.png", ws.root));
      const auto violations = validate_sample(sample);
      if (!violations.empty())
        throw Error(Errc::unvalidated_sample, violations.front().invariant + " " + violations.front().detail);
      write_file_atomic(dir / "image.png", item.result->image);
      write_record(dir / "annotations.json", sample);
      write_file_atomic(dir / kDoneMarker, "");
      ++stats.rendered;
    } catch (const std::exception& e) {
      ++stats.failed;
      stats.errors.push_back(job.id.str() + ": " + e.what());
      if (!stats.first_error) stats.first_error = Errc::unvalidated_sample;
    }
  });
  stats.aborted = outcome.aborted;
  return stats;
}

std::vector<AnnotatedSample> load_samples(const Workspace& ws) {
  std::vector<AnnotatedSample> out;
  std::error_code ec;
  if (!fs::is_directory(ws.samples_dir(), ec)) return out;
  std::vector<fs::path> markers;
  for (const auto& e : fs::recursive_directory_iterator(ws.samples_dir()))
    if (e.path().filename() == kDoneMarker) markers.push_back(e.path());
  for (const auto& m : markers) out.push_back(read_record(m.parent_path() / "annotations.json"));
  std::sort(out.begin(), out.end(), [](const AnnotatedSample& a, const AnnotatedSample& b) { return a.id.str() < b.id.str(); });
  return out;
}

dataset::SplitAssignment read_split(const Workspace& ws) {
  try {
    return dataset::assignment_from_json(json::parse(read_file(ws.split_file())));
  } catch (const json::parse_error& e) {
    throw ParseError(ws.split_file().string() + ": " + e.what());
  }
}

void write_split(const Workspace& ws, const dataset::SplitAssignment& a) {
  write_file_atomic(ws.split_file(), dataset::assignment_to_json(a).dump(1) + "\n");
}

RunSummary run_all(const PipelineConfig& config) {
  RunSummary summary;
  const Workspace ws{config.workspace};
  const auto layouts = load_layouts(config.layouts_dir);
  summary.layouts = layouts.size();
  const auto infos = layout_infos(layouts);
  const auto assignment = dataset::split(infos, config.strategy, config.seed);
  write_split(ws, assignment);

  const auto catalog = load_catalog(config.catalog_path, config.asset_root);
  const auto configs = gen_configs(ws, layouts, catalog, config.seed, config.variants, &assignment);
  for (const auto& [id, list] : configs) summary.configs += list.size();

  const auto jobs = plan_samples(layouts, configs, config.density);
  render::Renderer renderer(renderer_options(config));
  summary.render = render_samples(ws, jobs, renderer, config.viewport, config.jobs);
  if (summary.render.failed || summary.render.aborted) {
    const Errc code = summary.render.aborted ? Errc::browser_crashed : summary.render.first_error.value_or(Errc::browser_crashed);
    throw Error(code, std::to_string(summary.render.failed) + " sample(s) failed to render" +
                                           (summary.render.errors.empty() ? "" : ", first: " + summary.render.errors[0]));
  }

  summary.leakage = dataset::check_leakage(assignment, configs);
  if (!summary.leakage.empty()) return summary;
  const auto samples = load_samples(ws);
  dataset::ExportOptions opts;
  opts.format = config.format;
  opts.classes = dataset::ClassMap(config.classes);
  opts.image_root = ws.root;
  opts.pipeline = config.to_json();
  const fs::path out = config.export_dir.empty() ? ws.root / "export" : config.export_dir;
  summary.exported = dataset::export_dataset(samples, assignment, summary.leakage, opts, out);
  return summary;
}

review::PreviewRenderer make_preview_renderer(const PipelineConfig& config, render::Renderer& renderer) {
  auto catalog = std::make_shared<std::optional<catalog::Catalog>>();
  return [config, catalog, &renderer](const std::string& layout_id) {
    const auto t = templating::load_template(config.layouts_dir / layout_id);
    if (t.layout_id != layout_id)
      throw Error(Errc::unknown_layout, "directory '" + layout_id + "' declares layout '" + t.layout_id + "'");
    if (!*catalog) *catalog = load_catalog(config.catalog_path, config.asset_root);

    const Workspace ws{config.workspace};
    configgen::GenerateOptions opts;
    std::error_code ec;
    if (fs::exists(ws.split_file(), ec)) {
      const auto side = read_split(ws).split_of(layout_id);
      if (side) opts.partition = *side == "train" ? configgen::PoolPartition::train : configgen::PoolPartition::test;
    }
    const auto cfg = configgen::generate_config(t.data_spec, **catalog, config.seed, layout_id, 0, opts);
    const int n = static_cast<int>(t.included_fields(cfg.included_optional_fields).size());
    std::vector<FillTag> tags;
    if (n > 0) tags.push_back(FillTag::empty());
    if (n > 1) tags.push_back(FillTag::partial(std::max(1, n / 2)));
    tags.push_back(FillTag::full());

    std::vector<templating::LayoutTemplate> one{t};
    std::vector<SampleJob> jobs;
    for (const auto& tag : tags) {
      SampleJob job;
      job.layout = &one.front();
      job.config = cfg;
      job.id = SampleId{layout_id, 0, tag};
      job.state = fill::resolve_state(tag, one.front(), cfg);
      job.doc = templating::instantiate(one.front(), cfg, job.state);
      jobs.push_back(std::move(job));
    }
    std::vector<review::Preview> out;
    for (const auto& job : jobs) {
      const fs::path dir = ws.root / "review" / layout_id / job.id.fill.str();
      const auto result = renderer.render({job.id, job.doc.html, dir / "page.html", config.viewport, true});
      write_file_atomic(dir / "image.png", result.image);
      out.push_back({job.id.fill.str(), dir / "image.png", to_sample(job, result, (dir / "image.png").string())});
    }
    return out;
  };
}

}  // namespace screenforge::pipeline
