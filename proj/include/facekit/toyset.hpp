// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_TOYSET_HPP
#define FACEKIT_TOYSET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "facekit/annotations.hpp"
#include "facekit/raster.hpp"

namespace facekit {

inline constexpr std::uint64_t kToySeed = 0x7ace5e7dULL;

/// A small synthetic dataset: gradient images with painted shapes, plus
/// annotations marking 0 to 4 "face" boxes per image. Everything derives
/// from the seed, so two builds of the same seed agree byte for byte.
struct ToyDataset {
  AnnotationSet set;
  std::vector<ImageBuffer> images;  // parallel to set.records()
};

ToyDataset make_toy_dataset(std::size_t image_count = 20, std::uint64_t seed = kToySeed);

/// Writes root/images/<image_id> as PNG plus root/annotations.jsonl.
void write_toy_dataset(const ToyDataset& toy, const std::string& root);

}  // namespace facekit

#endif  // FACEKIT_TOYSET_HPP
