#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mimdet/mimetic.hpp"

namespace mimdet {

/// Grayscale raster, row-major, samples in [0,1].
class Image {
 public:
  Image() = default;
  Image(std::size_t height, std::size_t width, double fill = 0.0);
  /// Throws ShapeMismatch if samples.size() != height*width and
  /// InvalidArgument if any sample lies outside [0,1] or is not finite.
  Image(std::size_t height, std::size_t width, std::vector<double> samples);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  /// Row j (height), column i (width).
  double operator()(std::size_t j, std::size_t i) const { return samples_[j * width_ + i]; }
  double& operator()(std::size_t j, std::size_t i) { return samples_[j * width_ + i]; }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<double> samples_;
};

/// Decoded multi-channel raster, interleaved, samples normalized to [0,1].
struct Raster {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<double> samples;
};

enum class ImageFormat { kAuto, kPng, kPnm };

/// Decodes PNG or binary PNM (P5 grayscale, P6 RGB). kAuto sniffs the
/// signature. Errors are DecodeError with a kind identifying the failure.
Raster decode_image(std::span<const std::uint8_t> bytes, ImageFormat hint = ImageFormat::kAuto);
Raster decode_png(std::span<const std::uint8_t> bytes);
Raster decode_pnm(std::span<const std::uint8_t> bytes);

/// 8-bit P5 with samples quantized as round(v*255).
std::vector<std::uint8_t> encode_pgm(const Image& img);
/// P5 at maxval 65535, big-endian samples quantized as round(v*65535).
std::vector<std::uint8_t> encode_pgm16(const Image& img);
/// 8-bit grayscale (1 channel) or RGB (3 channels) PNG.
std::vector<std::uint8_t> encode_png(const Raster& raster);

/// gray = 0.2989 R + 0.5870 G + 0.1140 B, clamped to [0,1].
Image to_grayscale(const Raster& rgb);

/// Any decoded raster to grayscale: alpha is dropped, RGB goes through
/// to_grayscale.
Image as_grayscale(const Raster& raster);

/// Bicubic resampling (a = -0.5) with an antialiasing prefilter when
/// shrinking; output clamped to [0,1].
Image resize(const Image& img, std::size_t out_height, std::size_t out_width);

/// One replicated ghost layer on each side, x-fastest: index i + j*(W+2).
FieldVector pad_and_vectorize(const Image& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Raster load_raster(const std::filesystem::path& path);
Image load_grayscale(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const Image& img);

}  // namespace mimdet
