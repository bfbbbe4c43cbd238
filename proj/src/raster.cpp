// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace facekit {

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  const double inv_two_sigma2 = 1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double wgt = std::exp(-(static_cast<double>(i) * i) * inv_two_sigma2);
    kernel[radius + i] = wgt;
    sum += wgt;
  }
  for (double& wgt : kernel) wgt /= sum;
  return kernel;
}

namespace {

// One separable pass over a single line. `line` is the replicate-padded
// source (radius extra samples on both sides); the symmetric pairing
// w0*x[j] + sum_t wt*(x[j-t] + x[j+t]) makes the pass commute bitwise with
// reversing the line, since the kernel weights are exactly symmetric.
void convolve_line(const double* line, double* out, int n, const std::vector<double>& kernel) {
  const int radius = static_cast<int>(kernel.size() / 2);
  const double* center = line + radius;
  if (n == 1) {
    // Replicate padding makes the whole window constant, and the ideal kernel
    // sums to 1, so the exact answer is the sample itself. Computing it via
    // the renormalized weights would instead pick up rounding from the
    // division, leaving the value off by an ulp.
    out[0] = center[0];
    return;
  }
  const double w0 = kernel[radius];
  for (int j = 0; j < n; ++j) {
    double acc = w0 * center[j];
    for (int t = 1; t <= radius; ++t)
      acc += kernel[radius + t] * (center[j - t] + center[j + t]);
    out[j] = acc;
  }
}

void pad_replicate(const double* src, int n, std::ptrdiff_t stride, int radius,
                   std::vector<double>& line) {
  line.resize(static_cast<std::size_t>(n) + 2 * radius);
  for (int j = 0; j < n; ++j) line[radius + j] = src[j * stride];
  for (int t = 0; t < radius; ++t) {
    line[t] = src[0];
    line[radius + n + t] = src[(n - 1) * stride];
  }
}

// Two-pass separable blur over a h*w grid with `channels` interleaved planes.
void separable_blur(const double* src, double* dst, int h, int w, int channels, double sigma) {
  const std::vector<double> kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);

  std::vector<double> mid(static_cast<std::size_t>(h) * w * channels);
  std::vector<double> line;
  std::vector<double> out(static_cast<std::size_t>(std::max(h, w)));

  // Horizontal.
  for (int i = 0; i < h; ++i) {
    for (int c = 0; c < channels; ++c) {
      const double* row = src + (static_cast<std::size_t>(i) * w) * channels + c;
      pad_replicate(row, w, channels, radius, line);
      convolve_line(line.data(), out.data(), w, kernel);
      double* mrow = mid.data() + (static_cast<std::size_t>(i) * w) * channels + c;
      for (int j = 0; j < w; ++j) mrow[j * channels] = out[j];
    }
  }
  // Vertical.
  const std::ptrdiff_t row_stride = static_cast<std::ptrdiff_t>(w) * channels;
  for (int j = 0; j < w; ++j) {
    for (int c = 0; c < channels; ++c) {
      const double* col = mid.data() + static_cast<std::size_t>(j) * channels + c;
      pad_replicate(col, h, row_stride, radius, line);
      convolve_line(line.data(), out.data(), h, kernel);
      double* dcol = dst + static_cast<std::size_t>(j) * channels + c;
      for (int i = 0; i < h; ++i) {
        double v = out[i];
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
        dcol[i * row_stride] = v;
      }
    }
  }
}

}  // namespace

ImageBuffer gaussian_blur(const ImageBuffer& buffer, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be positive");
  if (buffer.h < 1 || buffer.w < 1) throw std::invalid_argument("gaussian_blur: empty buffer");
  ImageBuffer result(buffer.h, buffer.w);
  separable_blur(buffer.data.data(), result.data.data(), buffer.h, buffer.w, 3, sigma);
  return result;
}

MaskBuffer gaussian_blur(const MaskBuffer& buffer, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur: sigma must be positive");
  if (buffer.h < 1 || buffer.w < 1) throw std::invalid_argument("gaussian_blur: empty buffer");
  MaskBuffer result(buffer.h, buffer.w);
  separable_blur(buffer.data.data(), result.data.data(), buffer.h, buffer.w, 1, sigma);
  return result;
}

std::pair<int, int> covered_range(double lo, double hi, int n) {
  int first = static_cast<int>(std::ceil(lo - 0.5));
  int last = static_cast<int>(std::ceil(hi - 0.5));
  if (first < 0) first = 0;
  if (first > n) first = n;
  if (last > n) last = n;
  if (last < first) last = first;
  return {first, last};
}

MaskBuffer rasterize_mask(std::span<const BBox> boxes, int h, int w) {
  if (h < 1 || w < 1) throw std::invalid_argument("rasterize_mask: empty frame");
  MaskBuffer mask(h, w, 0.0);
  for (const BBox& b : boxes) {
    const auto [j0, j1] = covered_range(b.x0, b.x1, w);
    const auto [i0, i1] = covered_range(b.y0, b.y1, h);
    for (int i = i0; i < i1; ++i)
      for (int j = j0; j < j1; ++j) mask.at(i, j) = 1.0;
  }
  return mask;
}

ImageBuffer composite(const ImageBuffer& image, const ImageBuffer& blurred, const MaskBuffer& mask) {
  if (!image.same_shape(blurred) || image.h != mask.h || image.w != mask.w)
    throw std::invalid_argument("composite: dimension mismatch");
  ImageBuffer result(image.h, image.w);
  const std::size_t pixels = static_cast<std::size_t>(image.h) * image.w;
  for (std::size_t p = 0; p < pixels; ++p) {
    const double m = mask.data[p];
    const double inv = 1.0 - m;
    for (int c = 0; c < 3; ++c) {
      double v = m * blurred.data[p * 3 + c] + inv * image.data[p * 3 + c];
      if (v < 0.0) v = 0.0;
      if (v > 1.0) v = 1.0;
      result.data[p * 3 + c] = v;
    }
  }
  return result;
}

ImageBuffer flip_horizontal(const ImageBuffer& buffer) {
  ImageBuffer result(buffer.h, buffer.w);
  for (int i = 0; i < buffer.h; ++i)
    for (int j = 0; j < buffer.w; ++j)
      for (int c = 0; c < 3; ++c) result.at(i, buffer.w - 1 - j, c) = buffer.at(i, j, c);
  return result;
}

}  // namespace facekit
