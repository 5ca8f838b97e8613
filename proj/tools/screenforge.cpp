// screenforge command line. Exit codes:
//   0  success
//   1  unexpected internal failure
//   2  usage error or invalid flag value
//   3  leakage between train and test values (export refused)
//   4  validation failure: template issues, record invariants, fill readback
//   5  render failure: timeout, script error, protocol error, browser crash
//   6  unreadable or malformed input
//   7  unknown brand, page type, layout or sample id
//   8  external runner or classifier failed
//   9  export written with warnings (an empty split, unassigned samples)
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "screenforge/baseline/textpipe.hpp"
#include "screenforge/dataset/stats.hpp"
#include "screenforge/error.hpp"
#include "screenforge/eval/evalkit.hpp"
#include "screenforge/pipeline/pipeline.hpp"
#include "screenforge/review/service.hpp"
#include "screenforge/util/fs.hpp"

namespace sf = screenforge;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { ok = 0, internal = 1, usage = 2, leakage = 3, invalid = 4, render_failed = 5, bad_input = 6, unknown = 7, runner = 8, warning = 9 };

int exit_code(sf::Errc code) {
  using sf::Errc;
  switch (code) {
    case Errc::invalid_argument:
    case Errc::bad_density: return usage;
    case Errc::leakage_unresolved: return leakage;
    case Errc::unvalidated_sample:
    case Errc::fill_mismatch:
    case Errc::schema_mismatch: return invalid;
    case Errc::navigation_timeout:
    case Errc::script_error:
    case Errc::protocol_error:
    case Errc::browser_crashed: return render_failed;
    case Errc::unknown_brand:
    case Errc::unknown_page_type:
    case Errc::unknown_sample_id:
    case Errc::unknown_layout: return unknown;
    case Errc::runner_failed: return runner;
    default: return bad_input;
  }
}

struct Common {
  std::string layouts = "layouts";
  std::string catalog = "catalog/products.ndjson";
  std::string assets;
  std::string workspace = "work";
  std::uint64_t seed = 42;
  int variants = 5;
  std::string partials = "all";
  std::string viewport = "1400x900";
  std::string strategy = "cross-page:0.2";
  bool stratify_brand = false;
  std::string format = "coco";
  std::string classes = "fine";
  int jobs = 1;
  std::string browser;
  std::string extractor;
  std::string dest;

  sf::pipeline::PipelineConfig config() const {
    sf::pipeline::PipelineConfig c;
    c.layouts_dir = layouts;
    c.catalog_path = catalog;
    c.asset_root = assets;
    c.workspace = workspace;
    c.export_dir = dest;
    c.seed = seed;
    c.variants = variants;
    c.density = sf::fill::Density::parse(partials);
    c.viewport = sf::render::Viewport::parse(viewport);
    c.strategy = sf::dataset::SplitStrategy::parse(strategy);
    c.strategy.stratify_brand = stratify_brand;
    c.format = sf::dataset::parse_export_format(format);
    c.classes = sf::dataset::ClassMap::parse(classes).mode();
    c.jobs = jobs;
    c.browser = browser;
    c.extractor = extractor;
    return c;
  }
};

void print_findings(const std::vector<sf::dataset::LeakageFinding>& findings) {
  std::cerr << findings.size() << " leaked value(s):\n";
  for (const auto& f : findings) {
    std::string train, test;
    for (const auto& l : f.train_layouts) train += (train.empty() ? "" : ",") + l;
    for (const auto& l : f.test_layouts) test += (test.empty() ? "" : ",") + l;
    std::cerr << "  '" << f.value << "' train=[" << train << "] test=[" << test << "]\n";
  }
}

sf::render::RendererOptions renderer_options(const Common& c) {
  sf::render::RendererOptions o;
  o.browser.executable = c.browser.empty() ? sf::render::default_browser() : fs::path(c.browser);
  if (!c.extractor.empty()) o.extractor_source = sf::read_file(c.extractor);
  return o;
}

int cmd_validate(const Common& c) {
  int issues = 0;
  for (const auto& dir : sf::templating::list_layout_dirs(c.layouts)) {
    try {
      const auto t = sf::templating::load_template(dir);
      for (const auto& issue : sf::templating::validate_template(t)) {
        ++issues;
        std::cout << dir.filename().string() << ":" << issue.line << ":" << issue.column << ": "
                  << sf::templating::to_string(issue.kind) << ": " << issue.detail << "\n";
      }
      for (const auto& p : sf::configgen::check_data_spec(t.data_spec)) {
        ++issues;
        std::cout << dir.filename().string() << ": data_spec: " << p << "\n";
      }
    } catch (const sf::Error& e) {
      ++issues;
      std::cout << dir.filename().string() << ": " << sf::to_string(e.code()) << ": " << e.what() << "\n";
    }
  }
  std::cout << (issues ? std::to_string(issues) + " issue(s)" : "ok") << "\n";
  return issues ? invalid : ok;
}

int cmd_split(const Common& c) {
  const auto cfg = c.config();
  const auto layouts = sf::pipeline::load_layouts(cfg.layouts_dir);
  const auto a = sf::dataset::split(sf::pipeline::layout_infos(layouts), cfg.strategy, cfg.seed);
  sf::pipeline::write_split({cfg.workspace}, a);
  std::cout << "train " << a.train.size() << " test " << a.test.size() << "\n";
  return ok;
}

int cmd_gen_configs(const Common& c) {
  const auto cfg = c.config();
  const sf::pipeline::Workspace ws{cfg.workspace};
  const auto layouts = sf::pipeline::load_layouts(cfg.layouts_dir);
  std::optional<sf::dataset::SplitAssignment> a;
  std::error_code ec;
  if (fs::exists(ws.split_file(), ec)) a = sf::pipeline::read_split(ws);
  const auto catalog = sf::pipeline::load_catalog(cfg.catalog_path, cfg.asset_root);
  const auto configs = sf::pipeline::gen_configs(ws, layouts, catalog, cfg.seed, cfg.variants, a ? &*a : nullptr);
  std::size_t n = 0;
  for (const auto& [id, list] : configs) n += list.size();
  std::cout << n << " config(s) for " << layouts.size() << " layout(s)" << (a ? "" : " (no split: shared pools)") << "\n";
  return ok;
}

int cmd_render(const Common& c) {
  const auto cfg = c.config();
  const sf::pipeline::Workspace ws{cfg.workspace};
  const auto layouts = sf::pipeline::load_layouts(cfg.layouts_dir);
  const auto configs = sf::pipeline::read_configs(ws, layouts);
  const auto jobs = sf::pipeline::plan_samples(layouts, configs, cfg.density);
  sf::render::Renderer renderer(renderer_options(c));
  const auto stats = sf::pipeline::render_samples(ws, jobs, renderer, cfg.viewport, cfg.jobs);
  std::cout << "planned " << stats.planned << " rendered " << stats.rendered << " resumed " << stats.resumed
            << " failed " << stats.failed << "\n";
  for (const auto& e : stats.errors) std::cerr << "  " << e << "\n";
  for (const auto& v : stats.readback_violations) std::cerr << "  readback: " << v << "\n";
  if (stats.aborted || stats.failed) return render_failed;
  if (!stats.readback_violations.empty()) return invalid;
  return ok;
}

int cmd_export(const Common& c, const std::string& ledger_path) {
  const auto cfg = c.config();
  const sf::pipeline::Workspace ws{cfg.workspace};
  const auto layouts = sf::pipeline::load_layouts(cfg.layouts_dir);
  const auto assignment = sf::pipeline::read_split(ws);
  const auto configs = sf::pipeline::read_configs(ws, layouts);
  const auto findings = sf::dataset::check_leakage(assignment, configs);
  if (!findings.empty()) {
    print_findings(findings);
    return leakage;
  }
  auto samples = sf::pipeline::load_samples(ws);
  if (!ledger_path.empty()) {
    std::vector<std::string> ids;
    for (const auto& t : layouts) ids.push_back(t.layout_id);
    sf::review::ReviewLedger ledger(ledger_path, ids);
    sf::review::GateReport report;
    samples = sf::review::export_gate(ledger, samples, &report);
    std::cerr << "gate: " << sf::review::gate_to_json(report).dump() << "\n";
    if (report.passed_layouts.empty()) std::cerr << "warning: no approved layouts, nothing passes the gate\n";
  }
  sf::dataset::ExportOptions opts;
  opts.format = cfg.format;
  opts.classes = sf::dataset::ClassMap(cfg.classes);
  opts.image_root = ws.root;
  opts.pipeline = cfg.to_json();
  const fs::path out = cfg.export_dir.empty() ? ws.root / "export" : cfg.export_dir;
  const auto summary = sf::dataset::export_dataset(samples, assignment, findings, opts, out);
  for (const auto& [split, n] : summary.images) std::cout << split << " " << n << " image(s)\n";
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  const auto check = sf::dataset::validate_export(out);
  for (const auto& p : check.problems) std::cerr << "  " << p << "\n";
  if (!check.ok()) return invalid;
  // An empty split still exports, but signals it.
  return summary.warnings.empty() ? ok : warning;
}

int cmd_stats(const Common& c) {
  const sf::pipeline::Workspace ws{c.workspace};
  const auto samples = sf::pipeline::load_samples(ws);
  std::map<std::string, std::string> brand, type;
  std::error_code ec;
  if (fs::is_directory(c.layouts, ec)) {
    for (const auto& t : sf::pipeline::load_layouts(c.layouts)) {
      brand[t.layout_id] = t.brand;
      type[t.layout_id] = t.page_type;
    }
  }
  std::cout << sf::dataset::stats_to_json(sf::dataset::stats(samples, brand, type)).dump(2) << "\n";
  return ok;
}

int cmd_eval(const Common& c, const std::string& detections, double conf, const std::string& split, bool as_json) {
  const sf::pipeline::Workspace ws{c.workspace};
  auto samples = sf::pipeline::load_samples(ws);
  if (split != "all") {
    const auto a = sf::pipeline::read_split(ws);
    std::erase_if(samples, [&](const sf::AnnotatedSample& s) { return a.split_of(s.id.layout_id) != split; });
  }
  const auto classes = sf::dataset::ClassMap::parse(c.classes);
  const auto gts = sf::eval::GroundTruthSet::from_samples(samples, classes);
  const auto dets = sf::eval::parse_detections(sf::read_file(detections));
  sf::eval::EvalOptions opts;
  opts.conf_threshold = conf;
  const auto report = sf::eval::evaluate(dets, gts, classes, opts);
  std::cout << (as_json ? sf::eval::report_to_json(report).dump(2) + "\n" : sf::eval::report_table(report));
  return ok;
}

int cmd_baseline(const std::string& ocr, const std::string& output, const std::string& rules,
                 const std::string& classifier) {
  sf::baseline::BaselineOptions opts;
  if (!rules.empty()) opts.rules = sf::baseline::RuleSet::parse(rules);
  opts.external_command = classifier;
  const auto text = sf::baseline::run_baseline_file(ocr, opts);
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    sf::write_file_atomic(output, text);
  }
  return ok;
}

int cmd_review_serve(const Common& c, const std::string& listen, const std::string& ledger_path) {
  const auto cfg = c.config();
  std::vector<std::string> ids;
  for (const auto& t : sf::pipeline::load_layouts(cfg.layouts_dir)) ids.push_back(t.layout_id);
  sf::review::ReviewLedger ledger(ledger_path.empty() ? cfg.workspace / "review" / "ledger.jsonl" : fs::path(ledger_path), ids);
  sf::render::Renderer renderer(renderer_options(c));
  sf::review::ReviewService service(ledger, sf::pipeline::make_preview_renderer(cfg, renderer));
  sf::review::ReviewServer server(service);
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw sf::Error(sf::Errc::invalid_argument, "--listen wants host:port");
  const std::string host = listen.substr(0, colon);
  const int port = std::stoi(listen.substr(colon + 1));
  std::cerr << "review service on http://" << host << ":" << port << "\n";
  server.listen(host, port);
  return ok;
}

int cmd_bench(const std::string& runner, const std::vector<std::string>& images, int warmup, int reps) {
  std::vector<fs::path> paths(images.begin(), images.end());
  const auto s = sf::eval::bench_latency(runner, paths, warmup, reps);
  std::cout << json{{"samples", s.samples}, {"median_ms", s.median_ms}, {"p95_ms", s.p95_ms}, {"mean_ms", s.mean_ms},
                    {"min_ms", s.min_ms}, {"max_ms", s.max_ms}}
                   .dump(2)
            << "\n";
  return ok;
}

int cmd_run(const Common& c) {
  const auto summary = sf::pipeline::run_all(c.config());
  if (!summary.leakage.empty()) {
    print_findings(summary.leakage);
    return leakage;
  }
  std::cout << "layouts " << summary.layouts << " configs " << summary.configs << " rendered " << summary.render.rendered
            << " resumed " << summary.render.resumed << "\n";
  for (const auto& [split, n] : summary.exported.images) std::cout << split << " " << n << " image(s)\n";
  for (const auto& w : summary.exported.warnings) std::cerr << "warning: " << w << "\n";
  for (const auto& v : summary.render.readback_violations) std::cerr << "readback: " << v << "\n";
  if (!summary.render.readback_violations.empty()) return invalid;
  return summary.exported.warnings.empty() ? ok : warning;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic screenshot dataset pipeline"};
  app.require_subcommand(1);
  Common c;

  auto add_layouts = [&](CLI::App* s) { s->add_option("--layouts", c.layouts, "Layout templates directory"); };
  auto add_ws = [&](CLI::App* s) { s->add_option("--workspace,-w", c.workspace, "Workspace directory"); };
  auto add_catalog = [&](CLI::App* s) {
    s->add_option("--catalog", c.catalog, "Product catalog NDJSON");
    s->add_option("--assets", c.assets, "Asset root for catalog images (default: catalog directory)");
  };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", c.seed, "Master seed"); };
  auto add_render = [&](CLI::App* s) {
    s->add_option("--partials", c.partials, "Partial fill density: all or a count");
    s->add_option("--viewport", c.viewport, "Viewport WxH");
    s->add_option("-j,--jobs", c.jobs, "Parallel renders")->check(CLI::PositiveNumber);
    s->add_option("--browser", c.browser, "Chrome binary (default: $SCREENFORGE_BROWSER)");
    s->add_option("--extractor", c.extractor, "Extractor script (default: the bundled one)")->check(CLI::ExistingFile);
  };
  auto add_split = [&](CLI::App* s) {
    s->add_option("--strategy", c.strategy, "cross-page:<frac> | cross-company:<brand> | cross-type:<type>");
    s->add_flag("--stratify-brand", c.stratify_brand, "Stratify cross-page sampling by brand");
  };
  auto add_export = [&](CLI::App* s) {
    s->add_option("--format", c.format, "coco or yolo")->check(CLI::IsMember({"coco", "yolo"}));
    s->add_option("--classes", c.classes, "fine or coarse")->check(CLI::IsMember({"fine", "coarse"}));
    s->add_option("--dest", c.dest, "Export directory (default: <workspace>/export)");
  };

  auto* validate = app.add_subcommand("validate", "Check layout templates");
  add_layouts(validate);

  auto* split = app.add_subcommand("split", "Assign layouts to train and test");
  add_layouts(split);
  add_ws(split);
  add_seed(split);
  add_split(split);

  auto* gen = app.add_subcommand("gen-configs", "Generate data configs");
  add_layouts(gen);
  add_ws(gen);
  add_catalog(gen);
  add_seed(gen);
  gen->add_option("--variants", c.variants, "Variants per layout")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "Render all fill states (resumable)");
  add_layouts(render);
  add_ws(render);
  add_render(render);

  std::string ledger_path;
  auto* exp = app.add_subcommand("export", "Write a COCO or YOLO dataset");
  add_layouts(exp);
  add_ws(exp);
  add_export(exp);
  exp->add_option("--ledger", ledger_path, "Review ledger; only approved layouts are exported");

  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  add_layouts(stats);
  add_ws(stats);

  std::string detections, eval_split = "test";
  double conf = 0.25;
  bool as_json = false;
  auto* ev = app.add_subcommand("eval", "Score detections against the workspace ground truth");
  add_ws(ev);
  ev->add_option("--detections", detections, "Detections NDJSON")->required();
  ev->add_option("--classes", c.classes, "fine or coarse")->check(CLI::IsMember({"fine", "coarse"}));
  ev->add_option("--conf", conf, "Confidence threshold for precision/recall");
  ev->add_option("--split", eval_split, "train, test or all")->check(CLI::IsMember({"train", "test", "all"}));
  ev->add_flag("--json", as_json, "JSON report");

  std::string ocr, output, rules, classifier;
  auto* base = app.add_subcommand("baseline", "OCR + pattern rules baseline");
  base->add_option("--ocr", ocr, "OCR words NDJSON")->required();
  base->add_option("--output,-o", output, "Detections NDJSON (default: stdout)");
  base->add_option("--rules", rules, "Comma-separated rule names (default: all)");
  base->add_option("--classifier", classifier, "External classifier command");

  std::string listen = "127.0.0.1:8077";
  auto* serve = app.add_subcommand("review-serve", "Serve the review API");
  add_layouts(serve);
  add_ws(serve);
  add_catalog(serve);
  add_seed(serve);
  add_render(serve);
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--ledger", ledger_path, "Ledger file (default: <workspace>/review/ledger.jsonl)");

  std::string runner;
  std::vector<std::string> images;
  int warmup = 3, reps = 20;
  auto* bench = app.add_subcommand("bench", "Per-image latency of a detector command");
  bench->add_option("--runner", runner, "Command run as: <runner> <image>")->required();
  bench->add_option("--images", images, "Input images")->required();
  bench->add_option("--warmup", warmup, "Discarded runs");
  bench->add_option("--reps", reps, "Timed runs")->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "split, gen-configs, render and export in one go");
  add_layouts(run);
  add_ws(run);
  add_catalog(run);
  add_seed(run);
  add_render(run);
  add_split(run);
  add_export(run);
  run->add_option("--variants", c.variants, "Variants per layout")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*validate) return cmd_validate(c);
    if (*split) return cmd_split(c);
    if (*gen) return cmd_gen_configs(c);
    if (*render) return cmd_render(c);
    if (*exp) return cmd_export(c, ledger_path);
    if (*stats) return cmd_stats(c);
    if (*ev) return cmd_eval(c, detections, conf, eval_split, as_json);
    if (*base) return cmd_baseline(ocr, output, rules, classifier);
    if (*serve) return cmd_review_serve(c, listen, ledger_path);
    if (*bench) return cmd_bench(runner, images, warmup, reps);
    if (*run) return cmd_run(c);
  } catch (const sf::Error& e) {
    std::cerr << "error: " << sf::to_string(e.code()) << ": " << e.what() << "\n";
    if (e.code() == sf::Errc::leakage_unresolved) return leakage;
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
  return usage;
}
