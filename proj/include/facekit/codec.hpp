// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#ifndef FACEKIT_CODEC_HPP
#define FACEKIT_CODEC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "facekit/raster.hpp"

namespace facekit {

enum class ImageFormat { png, jpeg };

/// Identifies the container from magic bytes. Anything that is neither PNG
/// nor JPEG is a ParseError.
ImageFormat sniff_format(const std::vector<std::uint8_t>& bytes);

/// File extension (including the dot) conventionally used for the format.
const char* format_extension(ImageFormat format);

/// Decodes PNG or JPEG bytes into linear [0,1] RGB doubles (value = byte/255).
/// Grayscale and paletted inputs are expanded to RGB; alpha is discarded.
ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes);

/// Encodes to 8-bit RGB, rounding half away from zero after clamping to [0,1].
std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
std::vector<std::uint8_t> encode_jpeg(const ImageBuffer& image, int quality = 95);

std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

ImageBuffer load_image(const std::string& path);
void save_png(const std::string& path, const ImageBuffer& image);

/// The byte an in-range sample quantizes to.
std::uint8_t quantize_sample(double v);

}  // namespace facekit

#endif  // FACEKIT_CODEC_HPP
