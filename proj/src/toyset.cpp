// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/toyset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <utility>

#include "facekit/codec.hpp"
#include "facekit/rng.hpp"

namespace fs = std::filesystem;

namespace facekit {

namespace {

void paint_rect(ImageBuffer& img, const BBox& b, double r, double g, double bl) {
  const int y0 = std::clamp(int(b.y0), 0, img.h);
  const int y1 = std::clamp(int(b.y1), 0, img.h);
  const int x0 = std::clamp(int(b.x0), 0, img.w);
  const int x1 = std::clamp(int(b.x1), 0, img.w);
  for (int i = y0; i < y1; ++i) {
    for (int j = x0; j < x1; ++j) {
      img.at(i, j, 0) = r;
      img.at(i, j, 1) = g;
      img.at(i, j, 2) = bl;
    }
  }
}

BBox random_box(SplitMix64& rng, int w, int h, int min_side, int max_side) {
  const int bw = rng.uniform_int(min_side, std::min(max_side, w));
  const int bh = rng.uniform_int(min_side, std::min(max_side, h));
  const int x0 = rng.uniform_int(0, w - bw);
  const int y0 = rng.uniform_int(0, h - bh);
  return BBox{double(x0), double(y0), double(x0 + bw), double(y0 + bh)};
}

}  // namespace

ToyDataset make_toy_dataset(std::size_t image_count, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::pair<ImageRecord, ImageBuffer>> items;
  items.reserve(image_count);

  for (std::size_t i = 0; i < image_count; ++i) {
    const int w = 48 + 8 * rng.uniform_int(0, 6);
    const int h = 48 + 8 * rng.uniform_int(0, 6);

    ImageBuffer img(h, w);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        img.at(y, x, 0) = double(x) / double(w - 1);
        img.at(y, x, 1) = double(y) / double(h - 1);
        img.at(y, x, 2) = 0.2 + 0.6 * double((x + y) % 17) / 16.0;
      }
    }
    const int shapes = rng.uniform_int(1, 3);
    for (int s = 0; s < shapes; ++s) {
      paint_rect(img, random_box(rng, w, h, 6, 20), rng.uniform(), rng.uniform(), rng.uniform());
    }

    ImageRecord rec;
    char name[32];
    std::snprintf(name, sizeof(name), "img%03zu.png", i);
    rec.image_id = (i % 4 == 3 ? std::string("deep/") : std::string()) + name;
    rec.width = w;
    rec.height = h;
    rec.category = int(i % 5);

    const int faces = rng.uniform_int(0, 4);
    for (int f = 0; f < faces; ++f) {
      const BBox b = random_box(rng, w, h, 8, 24);
      rec.faces.push_back(b);
      // Faces get a brighter patch so obfuscation visibly changes pixels.
      paint_rect(img, b, 0.9, 0.8, 0.7);
    }
    if (rng.chance(0.4)) rec.objects.push_back(random_box(rng, w, h, 16, 40));

    items.emplace_back(std::move(rec), std::move(img));
  }

  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first.image_id < b.first.image_id; });

  ToyDataset toy;
  std::vector<ImageRecord> records;
  records.reserve(items.size());
  for (auto& [rec, img] : items) {
    records.push_back(std::move(rec));
    toy.images.push_back(std::move(img));
  }
  toy.set = AnnotationSet(std::move(records));
  return toy;
}

void write_toy_dataset(const ToyDataset& toy, const std::string& root) {
  const fs::path base(root);
  fs::create_directories(base / "images");
  for (std::size_t i = 0; i < toy.set.size(); ++i) {
    const fs::path path = base / "images" / toy.set.records()[i].image_id;
    fs::create_directories(path.parent_path());
    save_png(path.string(), toy.images[i]);
  }
  save_annotations(toy.set, (base / "annotations.jsonl").string());
}

}  // namespace facekit
