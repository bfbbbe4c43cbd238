// Copyright Contributors to the facekit project.
// SPDX-License-Identifier: Apache-2.0

#include "facekit/codec.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <jpeglib.h>
#include <png.h>

#include "facekit/errors.hpp"

namespace facekit {

ImageFormat sniff_format(const std::vector<std::uint8_t>& bytes) {
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  if (bytes.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, bytes.begin()))
    return ImageFormat::png;
  if (bytes.size() >= 3 && bytes[0] == 0xff && bytes[1] == 0xd8 && bytes[2] == 0xff)
    return ImageFormat::jpeg;
  throw ParseError("unrecognized image format");
}

const char* format_extension(ImageFormat format) {
  return format == ImageFormat::png ? ".png" : ".jpg";
}

std::uint8_t quantize_sample(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return std::uint8_t(std::lround(clamped * 255.0));
}

namespace {

ImageBuffer from_rgb8(const std::vector<std::uint8_t>& rgb, int h, int w) {
  ImageBuffer out(h, w);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = double(rgb[i]) / 255.0;
  return out;
}

std::vector<std::uint8_t> to_rgb8(const ImageBuffer& image) {
  std::vector<std::uint8_t> rgb(image.data.size());
  for (std::size_t i = 0; i < rgb.size(); ++i) rgb[i] = quantize_sample(image.data[i]);
  return rgb;
}

ImageBuffer decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    throw ParseError(std::string("PNG decode failed: ") + image.message);
  image.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> rgb(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw ParseError("PNG decode failed: " + message);
  }
  return from_rgb8(rgb, int(image.height), int(image.width));
}

std::vector<std::uint8_t> encode_png_bytes(const ImageBuffer& img) {
  const std::vector<std::uint8_t> rgb = to_rgb8(img);
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(img.w);
  image.height = png_uint_32(img.h);
  image.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, rgb.data(), 0, nullptr))
    throw ParseError(std::string("PNG encode failed: ") + image.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, rgb.data(), 0, nullptr))
    throw ParseError(std::string("PNG encode failed: ") + image.message);
  out.resize(size);
  return out;
}

struct JpegErrorTrap {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_trap(j_common_ptr cinfo) {
  auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, trap->message);
  std::longjmp(trap->jump, 1);
}

ImageBuffer decode_jpeg(const std::vector<std::uint8_t>& bytes) {
  jpeg_decompress_struct cinfo;
  JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.mgr);
  trap.mgr.error_exit = jpeg_error_trap;

  std::vector<std::uint8_t> rgb;
  if (setjmp(trap.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw ParseError(std::string("JPEG decode failed: ") + trap.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  const int w = int(cinfo.output_width);
  const int h = int(cinfo.output_height);
  rgb.resize(std::size_t(h) * std::size_t(w) * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = rgb.data() + std::size_t(cinfo.output_scanline) * std::size_t(w) * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return from_rgb8(rgb, h, w);
}

std::vector<std::uint8_t> encode_jpeg_bytes(const ImageBuffer& img, int quality) {
  const std::vector<std::uint8_t> rgb = to_rgb8(img);
  jpeg_compress_struct cinfo;
  JpegErrorTrap trap;
  cinfo.err = jpeg_std_error(&trap.mgr);
  trap.mgr.error_exit = jpeg_error_trap;

  unsigned char* mem = nullptr;
  unsigned long mem_size = 0;
  if (setjmp(trap.jump)) {
    jpeg_destroy_compress(&cinfo);
    std::free(mem);
    throw ParseError(std::string("JPEG encode failed: ") + trap.message);
  }
  jpeg_create_compress(&cinfo);
  jpeg_mem_dest(&cinfo, &mem, &mem_size);
  cinfo.image_width = JDIMENSION(img.w);
  cinfo.image_height = JDIMENSION(img.h);
  cinfo.input_components = 3;
  cinfo.in_color_space = JCS_RGB;
  jpeg_set_defaults(&cinfo);
  jpeg_set_quality(&cinfo, quality, TRUE);
  jpeg_start_compress(&cinfo, TRUE);
  while (cinfo.next_scanline < cinfo.image_height) {
    JSAMPROW row = const_cast<JSAMPROW>(rgb.data() + std::size_t(cinfo.next_scanline) *
                                                         std::size_t(img.w) * 3);
    jpeg_write_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_compress(&cinfo);
  std::vector<std::uint8_t> out(mem, mem + mem_size);
  jpeg_destroy_compress(&cinfo);
  std::free(mem);
  return out;
}

}  // namespace

ImageBuffer decode_image(const std::vector<std::uint8_t>& bytes) {
  return sniff_format(bytes) == ImageFormat::png ? decode_png(bytes) : decode_jpeg(bytes);
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& image) {
  if (image.h < 1 || image.w < 1) throw std::invalid_argument("cannot encode an empty image");
  return encode_png_bytes(image);
}

std::vector<std::uint8_t> encode_jpeg(const ImageBuffer& image, int quality) {
  if (image.h < 1 || image.w < 1) throw std::invalid_argument("cannot encode an empty image");
  if (quality < 1 || quality > 100) throw std::invalid_argument("JPEG quality must be 1..100");
  return encode_jpeg_bytes(image, quality);
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_binary_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw ParseError("write failed: " + path);
}

ImageBuffer load_image(const std::string& path) { return decode_image(read_binary_file(path)); }

void save_png(const std::string& path, const ImageBuffer& image) {
  write_binary_file(path, encode_png(image));
}

}  // namespace facekit
