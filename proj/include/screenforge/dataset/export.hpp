#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "screenforge/core/model.hpp"
#include "screenforge/dataset/classmap.hpp"
#include "screenforge/dataset/split.hpp"

namespace screenforge::dataset {

enum class ExportFormat { coco, yolo };

std::string_view to_string(ExportFormat f);
ExportFormat parse_export_format(std::string_view s);  // throws InvalidArgument

inline constexpr std::string_view kToolVersion = "screenforge 0.1.0";

// "<cls> <cx> <cy> <w> <h>" with coordinates normalized by the image size,
// six fixed decimals.
std::string yolo_line(int cls, const BBox& box, const ImageDims& dims);

struct YoloBox {
  int cls = 0;
  double cx = 0, cy = 0, w = 0, h = 0;
};

YoloBox parse_yolo_line(std::string_view line);  // throws ParseError
BBox yolo_to_pixels(const YoloBox& y, const ImageDims& dims);

struct ExportOptions {
  ExportFormat format = ExportFormat::coco;
  ClassMap classes;
  bool copy_images = true;
  std::filesystem::path image_root;  // relative image_refs resolve here
  // Echoed into the manifest.
  nlohmann::json pipeline = nlohmann::json::object();
};

struct ExportSummary {
  std::map<std::string, std::size_t> images;       // per split
  std::map<std::string, std::size_t> annotations;  // per split
  std::size_t unassigned = 0;                      // samples whose layout is in neither split
  std::vector<std::string> warnings;
};

// Writes out/<split>/{images/, labels/ | annotations.json} and
// out/manifest.json. Throws LeakageUnresolved when `leakage` is non-empty and
// UnvalidatedSample when any sample breaks a record invariant. Output is
// byte-identical for identical inputs.
ExportSummary export_dataset(std::span<const AnnotatedSample> samples, const SplitAssignment& assignment,
                             std::span<const LeakageFinding> leakage, const ExportOptions& options,
                             const std::filesystem::path& out);

// The COCO document for one split.
nlohmann::json coco_document(std::span<const AnnotatedSample> samples, const ClassMap& classes);

// Inverse of coco_document. Exported samples carry the fields COCO has no slot
// for (fine label, source key, line index, visibility) so the round trip is
// lossless.
std::vector<AnnotatedSample> samples_from_coco(const nlohmann::json& doc);
std::vector<AnnotatedSample> import_coco(const std::filesystem::path& split_dir);

struct YoloSample {
  std::string sample_id;
  ImageDims dims;
  std::vector<std::pair<int, BBox>> boxes;
};

// Reads labels/<id>.txt against images/<id>.png.
std::vector<YoloSample> import_yolo(const std::filesystem::path& split_dir);

struct ExportCheck {
  std::size_t samples = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Re-reads an export directory and checks structure, class ids, coordinate
// ranges, image sizes and every record invariant.
ExportCheck validate_export(const std::filesystem::path& out);

}  // namespace screenforge::dataset
