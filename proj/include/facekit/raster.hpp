// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_RASTER_HPP
#define FACEKIT_RASTER_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "facekit/bbox.hpp"

namespace facekit {

/// h x w x 3 raster of channel values in [0, 1], row-major, interleaved RGB.
struct ImageBuffer {
  int h = 0;
  int w = 0;
  std::vector<double> data;

  ImageBuffer() = default;
  ImageBuffer(int height, int width, double fill = 0.0)
      : h(height), w(width), data(static_cast<std::size_t>(height) * width * 3, fill) {}

  double& at(int i, int j, int c) { return data[(static_cast<std::size_t>(i) * w + j) * 3 + c]; }
  double at(int i, int j, int c) const { return data[(static_cast<std::size_t>(i) * w + j) * 3 + c]; }

  bool same_shape(const ImageBuffer& o) const { return h == o.h && w == o.w; }
  bool operator==(const ImageBuffer&) const = default;
};

/// h x w single-channel mask with values in [0, 1].
struct MaskBuffer {
  int h = 0;
  int w = 0;
  std::vector<double> data;

  MaskBuffer() = default;
  MaskBuffer(int height, int width, double fill = 0.0)
      : h(height), w(width), data(static_cast<std::size_t>(height) * width, fill) {}

  double& at(int i, int j) { return data[static_cast<std::size_t>(i) * w + j]; }
  double at(int i, int j) const { return data[static_cast<std::size_t>(i) * w + j]; }

  bool operator==(const MaskBuffer&) const = default;
};

/// 1-D Gaussian kernel sampled at integer offsets -R..R with R = ceil(3*sigma),
/// renormalized to sum exactly one. Returned as the 2R+1 weights in order.
std::vector<double> gaussian_kernel(double sigma);

/// Separable 2-D Gaussian convolution, applied per channel. Borders replicate
/// the edge value; output is clamped to [0,1] against floating-point spill.
/// Blurring commutes bitwise with horizontal/vertical flips and preserves
/// constant buffers.
ImageBuffer gaussian_blur(const ImageBuffer& buffer, double sigma);
MaskBuffer gaussian_blur(const MaskBuffer& buffer, double sigma);

/// Integer pixel index range [first, last) whose centers fall inside the
/// half-open coordinate interval [lo, hi), clipped to [0, n).
std::pair<int, int> covered_range(double lo, double hi, int n);

/// Mask with value 1 at every pixel whose center (j+0.5, i+0.5) lies in the
/// union of the boxes, 0 elsewhere.
MaskBuffer rasterize_mask(std::span<const BBox> boxes, int h, int w);

/// Per pixel and channel: mask * blurred + (1 - mask) * image.
ImageBuffer composite(const ImageBuffer& image, const ImageBuffer& blurred, const MaskBuffer& mask);

ImageBuffer flip_horizontal(const ImageBuffer& buffer);

}  // namespace facekit

#endif  // FACEKIT_RASTER_HPP
