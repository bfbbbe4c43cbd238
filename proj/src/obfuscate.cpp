// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/obfuscate.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <stdexcept>
#include <thread>

#include "facekit/codec.hpp"

namespace fs = std::filesystem;

namespace facekit {

BBox enlarge_box(const BBox& box, int h, int w) {
  const double pad = box.diagonal() / 10.0;
  return BBox{box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad}.clamped(double(w), double(h));
}

namespace {

double max_diagonal(std::span<const BBox> boxes) {
  double d = 0.0;
  for (const BBox& b : boxes) d = std::max(d, b.diagonal());
  return d;
}

void check_color(const OverlayColor& color) {
  for (double c : {color.r, color.g, color.b}) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("overlay color outside [0,1]");
  }
}

}  // namespace

ImageBuffer blur_faces(const ImageBuffer& image, std::span<const BBox> faces,
                       SigmaSource sigma_source) {
  if (faces.empty()) return image;

  std::vector<BBox> enlarged;
  enlarged.reserve(faces.size());
  for (const BBox& b : faces) enlarged.push_back(enlarge_box(b, image.h, image.w));

  const double d_max = sigma_source == SigmaSource::original_boxes ? max_diagonal(faces)
                                                                   : max_diagonal(enlarged);
  const double sigma = d_max / 10.0;
  const MaskBuffer mask = rasterize_mask(enlarged, image.h, image.w);
  const MaskBuffer mask_blurred = gaussian_blur(mask, sigma);
  const ImageBuffer image_blurred = gaussian_blur(image, sigma);
  return composite(image, image_blurred, mask_blurred);
}

ImageBuffer overlay_faces(const ImageBuffer& image, std::span<const BBox> faces,
                          const OverlayColor& color, bool enlarge) {
  check_color(color);
  ImageBuffer out = image;
  for (const BBox& face : faces) {
    const BBox box = enlarge ? enlarge_box(face, image.h, image.w) : face;
    const auto [row0, row1] = covered_range(box.y0, box.y1, image.h);
    const auto [col0, col1] = covered_range(box.x0, box.x1, image.w);
    for (int i = row0; i < row1; ++i) {
      for (int j = col0; j < col1; ++j) {
        out.at(i, j, 0) = color.r;
        out.at(i, j, 1) = color.g;
        out.at(i, j, 2) = color.b;
      }
    }
  }
  return out;
}

namespace {

enum class ItemState { processed, copied, skipped };

struct ItemResult {
  ItemState state = ItemState::skipped;
  bool warned = false;
  std::exception_ptr error;
};

ItemResult obfuscate_one(const ImageRecord& rec, const fs::path& in_path, const fs::path& out_path,
                         const ObfuscateOptions& options) {
  ItemResult result;
  if (!fs::exists(in_path)) {
    result.state = ItemState::skipped;
    return result;
  }
  const std::vector<std::uint8_t> bytes = read_binary_file(in_path.string());
  if (rec.faces.empty()) {
    write_binary_file(out_path.string(), bytes);
    result.state = ItemState::copied;
    return result;
  }

  const ImageFormat format = sniff_format(bytes);
  ImageBuffer image = decode_image(bytes);

  std::vector<BBox> faces = rec.faces;
  if (image.h != rec.height || image.w != rec.width) {
    // The file on disk disagrees with the annotation record; trust the pixels
    // and refit the boxes.
    result.warned = true;
    std::vector<BBox> refit;
    for (const BBox& b : faces) {
      const BBox c = b.clamped(double(image.w), double(image.h));
      if (c.valid()) refit.push_back(c);
    }
    faces = std::move(refit);
  }

  const ImageBuffer out =
      options.mode == ObfuscationMode::blur
          ? blur_faces(image, faces, options.sigma_source)
          : overlay_faces(image, faces, options.color, options.overlay_enlarge);

  fs::path target = out_path;
  if (options.force_png || format == ImageFormat::png) {
    if (format == ImageFormat::jpeg) target.replace_extension(".png");
    write_binary_file(target.string(), encode_png(out));
  } else {
    write_binary_file(target.string(), encode_jpeg(out, options.jpeg_quality));
  }
  result.state = ItemState::processed;
  return result;
}

}  // namespace

ObfuscationReport obfuscate_dataset(const AnnotationSet& set, const std::string& image_root,
                                    const std::string& out_root, const ObfuscateOptions& options) {
  if (options.mode == ObfuscationMode::overlay) check_color(options.color);
  const auto& records = set.records();
  const int jobs = std::max(1, options.jobs);

  // Directories are created up front so workers only ever write files.
  fs::create_directories(out_root);
  for (const ImageRecord& rec : records) {
    const fs::path out_path = fs::path(out_root) / rec.image_id;
    fs::create_directories(out_path.parent_path());
  }

  std::vector<ItemResult> results(records.size());
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const ImageRecord& rec = records[i];
      try {
        results[i] = obfuscate_one(rec, fs::path(image_root) / rec.image_id,
                                   fs::path(out_root) / rec.image_id, options);
      } catch (...) {
        results[i].error = std::current_exception();
      }
    }
  };

  if (jobs == 1 || records.size() <= 1) {
    worker(0, records.size());
  } else {
    const std::size_t threads = std::min(std::size_t(jobs), records.size());
    const std::size_t chunk = (records.size() + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(records.size(), begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }

  ObfuscationReport report;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (results[i].error) std::rethrow_exception(results[i].error);
    switch (results[i].state) {
      case ItemState::processed: ++report.processed; break;
      case ItemState::copied: ++report.copied; break;
      case ItemState::skipped: report.skipped.push_back(records[i].image_id); break;
    }
    if (results[i].warned) ++report.warnings;
  }
  return report;
}

}  // namespace facekit
