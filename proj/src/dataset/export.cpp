#include "screenforge/dataset/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <system_error>

#include "screenforge/error.hpp"
#include "screenforge/render/harness.hpp"
#include "screenforge/util/fs.hpp"
#include "screenforge/util/text.hpp"

namespace screenforge::dataset {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kSplits[] = {"train", "test"};

std::vector<const AnnotatedSample*> sorted_samples(std::span<const AnnotatedSample> samples) {
  std::vector<const AnnotatedSample*> out;
  for (const auto& s : samples) out.push_back(&s);
  std::stable_sort(out.begin(), out.end(),
                   [](const AnnotatedSample* a, const AnnotatedSample* b) { return a->id.str() < b->id.str(); });
  return out;
}

std::string image_name(const AnnotatedSample& s) { return s.id.str() + ".png"; }

int class_index(const ClassMap& classes, FineLabel label) {
  return *classes.category_index(classes.map(label));
}

}  // namespace

std::string_view to_string(ExportFormat f) { return f == ExportFormat::coco ? "coco" : "yolo"; }

ExportFormat parse_export_format(std::string_view s) {
  if (s == "coco") return ExportFormat::coco;
  if (s == "yolo") return ExportFormat::yolo;
  throw Error(Errc::invalid_argument, "export format must be coco or yolo, got '" + std::string(s) + "'");
}

std::string yolo_line(int cls, const BBox& box, const ImageDims& dims) {
  const double W = dims.width;
  const double H = dims.height;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d %.6f %.6f %.6f %.6f", cls, (box.x + box.w / 2.0) / W, (box.y + box.h / 2.0) / H,
                box.w / W, box.h / H);
  return buf;
}

YoloBox parse_yolo_line(std::string_view line) {
  YoloBox y;
  const std::string s(trim(line));
  int used = 0;
  if (std::sscanf(s.c_str(), "%d %lf %lf %lf %lf%n", &y.cls, &y.cx, &y.cy, &y.w, &y.h, &used) != 5 ||
      static_cast<std::size_t>(used) != s.size()) {
    throw ParseError("bad yolo line '" + s + "'");
  }
  return y;
}

BBox yolo_to_pixels(const YoloBox& y, const ImageDims& dims) {
  const double W = dims.width;
  const double H = dims.height;
  const long x0 = std::lround((y.cx - y.w / 2) * W);
  const long y0 = std::lround((y.cy - y.h / 2) * H);
  const long x1 = std::lround((y.cx + y.w / 2) * W);
  const long y1 = std::lround((y.cy + y.h / 2) * H);
  return BBox{static_cast<int>(x0), static_cast<int>(y0), static_cast<int>(x1 - x0), static_cast<int>(y1 - y0)};
}

json coco_document(std::span<const AnnotatedSample> samples, const ClassMap& classes) {
  json images = json::array();
  json annotations = json::array();
  json categories = json::array();
  const auto& cats = classes.categories();
  for (std::size_t i = 0; i < cats.size(); ++i)
    categories.push_back({{"id", i + 1}, {"name", cats[i]}, {"supercategory", cats[i] == "image" || cats[i] == "product_image" ? "image" : "text"}});
  std::int64_t image_id = 0;
  std::int64_t ann_id = 0;
  for (const AnnotatedSample* s : sorted_samples(samples)) {
    ++image_id;
    images.push_back({{"id", image_id},
                      {"file_name", "images/" + image_name(*s)},
                      {"width", s->image_dims.width},
                      {"height", s->image_dims.height},
                      {"sample_id", s->id.str()},
                      {"config_seed", s->config_seed},
                      {"source_image", s->image_ref}});
    for (const Annotation& a : s->annotations) {
      annotations.push_back({{"id", ++ann_id},
                             {"image_id", image_id},
                             {"category_id", class_index(classes, a.cls.fine_label) + 1},
                             {"bbox", {a.box.x, a.box.y, a.box.w, a.box.h}},
                             {"area", a.box.area()},
                             {"iscrowd", 0},
                             {"fine_label", to_string(a.cls.fine_label)},
                             {"source_key", a.source_key},
                             {"line_index", a.line_index},
                             {"visibility", to_string(a.visibility)}});
    }
  }
  return json{{"info", {{"description", "screenforge export"}, {"version", kToolVersion}}},
              {"images", images},
              {"annotations", annotations},
              {"categories", categories}};
}

std::vector<AnnotatedSample> samples_from_coco(const json& doc) {
  try {
    std::vector<AnnotatedSample> out;
    std::map<std::int64_t, std::size_t> by_id;
    for (const auto& img : doc.at("images")) {
      AnnotatedSample s;
      const auto sid = img.at("sample_id").get<std::string>();
      auto id = SampleId::parse(sid);
      if (!id) throw ParseError("bad sample id '" + sid + "' in coco images");
      s.id = *id;
      s.image_ref = img.value("source_image", std::string());
      s.config_seed = img.value("config_seed", std::uint64_t{0});
      s.image_dims = {img.at("width").get<int>(), img.at("height").get<int>()};
      if (!by_id.emplace(img.at("id").get<std::int64_t>(), out.size()).second)
        throw ParseError("duplicate coco image id");
      out.push_back(std::move(s));
    }
    for (const auto& a : doc.at("annotations")) {
      auto it = by_id.find(a.at("image_id").get<std::int64_t>());
      if (it == by_id.end()) throw ParseError("annotation references unknown image");
      const auto label = parse_fine_label(a.at("fine_label").get<std::string>());
      if (!label) throw ParseError("unknown fine label in coco annotation");
      const auto vis = parse_visibility(a.value("visibility", std::string("full")));
      if (!vis) throw ParseError("unknown visibility in coco annotation");
      const auto& b = a.at("bbox");
      Annotation ann;
      ann.box = {b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(), b.at(3).get<int>()};
      ann.cls = AnnotationClass::of(*label);
      ann.source_key = a.value("source_key", std::string());
      ann.line_index = a.value("line_index", 0);
      ann.visibility = *vis;
      out[it->second].annotations.push_back(std::move(ann));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("coco document: ") + e.what());
  }
}

std::vector<AnnotatedSample> import_coco(const fs::path& split_dir) {
  const auto text = read_file(split_dir / "annotations.json");
  try {
    return samples_from_coco(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("annotations.json: ") + e.what());
  }
}

std::vector<YoloSample> import_yolo(const fs::path& split_dir) {
  std::vector<fs::path> labels;
  std::error_code ec;
  if (fs::is_directory(split_dir / "labels", ec))
    for (const auto& e : fs::directory_iterator(split_dir / "labels"))
      if (e.path().extension() == ".txt") labels.push_back(e.path());
  std::sort(labels.begin(), labels.end());
  std::vector<YoloSample> out;
  for (const auto& path : labels) {
    YoloSample s;
    s.sample_id = path.stem().string();
    s.dims = render::png_dimensions(read_file(split_dir / "images" / (s.sample_id + ".png")));
    int line_no = 0;
    for (const auto& line : screenforge::split(read_file(path), '\n')) {
      ++line_no;
      if (trim(line).empty()) continue;
      YoloBox y;
      try {
        y = parse_yolo_line(line);
      } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ": " + e.what(), line_no, 1);
      }
      s.boxes.emplace_back(y.cls, yolo_to_pixels(y, s.dims));
    }
    out.push_back(std::move(s));
  }
  return out;
}

ExportSummary export_dataset(std::span<const AnnotatedSample> samples, const SplitAssignment& assignment,
                             std::span<const LeakageFinding> leakage, const ExportOptions& options,
                             const fs::path& out) {
  if (!leakage.empty()) {
    throw Error(Errc::leakage_unresolved,
                std::to_string(leakage.size()) + " value(s) shared between train and test, first '" + leakage[0].value +
                    "'");
  }
  for (const auto& s : samples) {
    const auto v = validate_sample(s);
    if (!v.empty())
      throw Error(Errc::unvalidated_sample, s.id.str() + ": " + v.front().invariant + " " + v.front().detail);
  }

  ExportSummary summary;
  std::map<std::string, std::vector<AnnotatedSample>> by_split;
  for (const char* name : kSplits) by_split[name];
  for (const AnnotatedSample* s : sorted_samples(samples)) {
    auto side = assignment.split_of(s->id.layout_id);
    if (!side) {
      ++summary.unassigned;
      continue;
    }
    by_split[*side].push_back(*s);
  }
  if (summary.unassigned)
    summary.warnings.push_back(std::to_string(summary.unassigned) + " sample(s) belong to layouts outside the split");

  json seeds = json::object();
  for (const char* name : kSplits) {
    const auto& list = by_split[name];
    const fs::path dir = out / name;
    fs::create_directories(dir / "images");
    std::size_t boxes = 0;
    for (const auto& s : list) {
      boxes += s.annotations.size();
      seeds[s.id.str()] = s.config_seed;
      const fs::path dest = dir / "images" / image_name(s);
      if (options.copy_images) {
        std::error_code ec;
        fs::copy_file(options.image_root / s.image_ref, dest, fs::copy_options::overwrite_existing, ec);
        if (ec) throw Error(Errc::io_error, "copy " + s.image_ref + ": " + ec.message());
      }
    }
    if (options.format == ExportFormat::coco) {
      write_file_atomic(dir / "annotations.json", coco_document(list, options.classes).dump(1) + "\n");
    } else {
      fs::create_directories(dir / "labels");
      for (const auto& s : list) {
        std::string text;
        for (const auto& a : s.annotations)
          text += yolo_line(class_index(options.classes, a.cls.fine_label), a.box, s.image_dims) + "\n";
        write_file_atomic(dir / "labels" / (s.id.str() + ".txt"), text);
      }
    }
    summary.images[name] = list.size();
    summary.annotations[name] = boxes;
    if (list.empty()) summary.warnings.push_back(std::string(name) + " split is empty");
  }
  if (options.format == ExportFormat::yolo) {
    std::string names;
    for (const auto& c : options.classes.categories()) names += c + "\n";
    write_file_atomic(out / "classes.txt", names);
  }

  json counts = json::object();
  for (const char* name : kSplits)
    counts[name] = {{"images", summary.images[name]}, {"annotations", summary.annotations[name]}};
  json manifest{{"tool_version", kToolVersion},
                {"format", to_string(options.format)},
                {"classes", {{"mode", options.classes.name()}, {"categories", options.classes.categories()}}},
                {"split", assignment_to_json(assignment)},
                {"counts", counts},
                {"unassigned", summary.unassigned},
                {"pipeline", options.pipeline},
                {"sample_seeds", seeds}};
  write_file_atomic(out / "manifest.json", manifest.dump(1) + "\n");
  return summary;
}

ExportCheck validate_export(const fs::path& out) {
  ExportCheck check;
  json manifest;
  try {
    manifest = json::parse(read_file(out / "manifest.json"));
  } catch (const std::exception& e) {
    check.problems.push_back(std::string("manifest: ") + e.what());
    return check;
  }
  const auto format = manifest.value("format", std::string());
  std::size_t n_classes = 0;
  try {
    n_classes = manifest.at("classes").at("categories").size();
  } catch (const json::exception&) {
    check.problems.push_back("manifest: missing class list");
    return check;
  }
  auto problem = [&](const std::string& where, const std::string& what) { check.problems.push_back(where + ": " + what); };

  for (const char* name : kSplits) {
    const fs::path dir = out / name;
    std::size_t expected = 0;
    try {
      expected = manifest.at("counts").at(name).at("images").get<std::size_t>();
    } catch (const json::exception&) {
      problem(name, "missing count in manifest");
      continue;
    }
    std::size_t seen = 0;
    try {
      if (format == "coco") {
        const auto doc = json::parse(read_file(dir / "annotations.json"));
        for (const auto& a : doc.at("annotations")) {
          const auto cat = a.at("category_id").get<long>();
          if (cat < 1 || static_cast<std::size_t>(cat) > n_classes)
            problem(name, "annotation " + a.at("id").dump() + " has category " + std::to_string(cat));
        }
        for (const auto& s : samples_from_coco(doc)) {
          ++seen;
          const auto where = std::string(name) + "/" + s.id.str();
          const fs::path image = dir / "images" / image_name(s);
          std::error_code ec;
          if (fs::exists(image, ec) && render::png_dimensions(read_file(image)) != s.image_dims)
            problem(where, "image size differs from record");
          for (const auto& v : validate_sample(s)) problem(where, v.invariant + " " + v.detail);
        }
      } else if (format == "yolo") {
        for (const auto& s : import_yolo(dir)) {
          ++seen;
          const auto where = std::string(name) + "/" + s.sample_id;
          AnnotatedSample rec;
          rec.image_dims = s.dims;
          for (const auto& [cls, box] : s.boxes) {
            if (cls < 0 || static_cast<std::size_t>(cls) >= n_classes)
              problem(where, "class " + std::to_string(cls) + " out of range");
            Annotation a;
            a.box = box;
            a.cls = AnnotationClass::of(FineLabel::input_field);
            rec.annotations.push_back(a);
          }
          for (const auto& v : validate_sample(rec)) problem(where, v.invariant + " " + v.detail);
        }
      } else {
        problem("manifest", "unknown format '" + format + "'");
        return check;
      }
    } catch (const std::exception& e) {
      problem(name, e.what());
      continue;
    }
    if (seen != expected)
      problem(name, "manifest counts " + std::to_string(expected) + " images, found " + std::to_string(seen));
    check.samples += seen;
  }
  return check;
}

}  // namespace screenforge::dataset
