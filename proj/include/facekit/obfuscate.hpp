// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_OBFUSCATE_HPP
#define FACEKIT_OBFUSCATE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "facekit/annotations.hpp"
#include "facekit/bbox.hpp"
#include "facekit/raster.hpp"

namespace facekit {

struct OverlayColor {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

/// Dataset-average gray used as the default overlay shade.
inline constexpr OverlayColor kMeanOverlayColor{0.485, 0.456, 0.406};
inline constexpr OverlayColor kRedOverlayColor{1.0, 0.0, 0.0};
inline constexpr OverlayColor kGreenOverlayColor{0.0, 1.0, 0.0};
inline constexpr OverlayColor kBlueOverlayColor{0.0, 0.0, 1.0};

/// Which box diagonals feed the blur strength sigma = d_max / 10.
enum class SigmaSource { original_boxes, enlarged_boxes };

/// Pads every side outward by a tenth of the box diagonal, then clamps to the
/// frame [0,w] x [0,h].
BBox enlarge_box(const BBox& box, int h, int w);

/// Feathered face blurring: enlarge boxes, rasterize their union into a mask,
/// blur mask and image with sigma = d_max/10, then composite the blurred
/// image through the blurred mask. An empty face list returns the input
/// unchanged.
ImageBuffer blur_faces(const ImageBuffer& image, std::span<const BBox> faces,
                       SigmaSource sigma_source = SigmaSource::original_boxes);

/// Paints the color over every pixel whose center lies in the union of the
/// boxes (enlarged first when requested); all other pixels pass through
/// bit-identically.
ImageBuffer overlay_faces(const ImageBuffer& image, std::span<const BBox> faces,
                          const OverlayColor& color, bool enlarge = false);

enum class ObfuscationMode { blur, overlay };

struct ObfuscateOptions {
  ObfuscationMode mode = ObfuscationMode::blur;
  SigmaSource sigma_source = SigmaSource::original_boxes;
  OverlayColor color = kMeanOverlayColor;
  bool overlay_enlarge = false;
  bool force_png = false;
  int jpeg_quality = 95;
  int jobs = 1;
};

struct ObfuscationReport {
  std::size_t processed = 0;          // obfuscated and re-encoded
  std::size_t copied = 0;             // no faces: input bytes copied through
  std::size_t warnings = 0;           // per-image anomalies (e.g. dimension drift)
  std::vector<std::string> skipped;   // image_ids missing under the image root

  std::size_t outputs() const { return processed + copied; }
};

/// Obfuscates every record's image from image_root into out_root, preserving
/// relative paths. Images without faces are copied byte for byte. Output
/// bytes and the report are independent of the number of worker threads.
ObfuscationReport obfuscate_dataset(const AnnotationSet& set, const std::string& image_root,
                                    const std::string& out_root, const ObfuscateOptions& options);

}  // namespace facekit

#endif  // FACEKIT_OBFUSCATE_HPP
