#include "mimdet/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "mimdet/error.hpp"

namespace mimdet {

Image::Image(std::size_t height, std::size_t width, double fill)
    : height_(height), width_(width), samples_(height * width, fill) {
  if (!(fill >= 0.0 && fill <= 1.0)) throw InvalidArgument("fill value outside [0,1]");
}

Image::Image(std::size_t height, std::size_t width, std::vector<double> samples)
    : height_(height), width_(width), samples_(std::move(samples)) {
  if (samples_.size() != height * width) {
    throw ShapeMismatch("image of " + std::to_string(height) + "x" + std::to_string(width) +
                        " given " + std::to_string(samples_.size()) + " samples");
  }
  for (double v : samples_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("image sample outside [0,1]");
  }
}

Raster decode_image(std::span<const std::uint8_t> bytes, ImageFormat hint) {
  if (hint == ImageFormat::kAuto) {
    static constexpr std::uint8_t kPngSig[] = {0x89, 'P', 'N', 'G'};
    if (bytes.size() >= 4 && std::equal(std::begin(kPngSig), std::end(kPngSig), bytes.begin())) {
      hint = ImageFormat::kPng;
    } else if (bytes.size() >= 2 && bytes[0] == 'P') {
      hint = ImageFormat::kPnm;
    } else {
      throw DecodeError(DecodeErrorKind::kUnsupportedFormat, "unrecognized image signature");
    }
  }
  return hint == ImageFormat::kPng ? decode_png(bytes) : decode_pnm(bytes);
}

Image to_grayscale(const Raster& rgb) {
  if (rgb.channels != 3) {
    throw InvalidArgument("to_grayscale expects 3 channels, got " + std::to_string(rgb.channels));
  }
  std::vector<double> gray(rgb.height * rgb.width);
  for (std::size_t p = 0; p < gray.size(); ++p) {
    const double* px = &rgb.samples[3 * p];
    double v = 0.2989 * px[0] + 0.5870 * px[1] + 0.1140 * px[2];
    gray[p] = std::clamp(v, 0.0, 1.0);
  }
  return Image(rgb.height, rgb.width, std::move(gray));
}

Image as_grayscale(const Raster& raster) {
  switch (raster.channels) {
    case 1:
      return Image(raster.height, raster.width, raster.samples);
    case 2: {
      std::vector<double> g(raster.height * raster.width);
      for (std::size_t p = 0; p < g.size(); ++p) g[p] = raster.samples[2 * p];
      return Image(raster.height, raster.width, std::move(g));
    }
    case 3:
      return to_grayscale(raster);
    case 4: {
      Raster rgb{raster.height, raster.width, 3, {}};
      rgb.samples.reserve(raster.height * raster.width * 3);
      for (std::size_t p = 0; p < raster.height * raster.width; ++p) {
        rgb.samples.insert(rgb.samples.end(), &raster.samples[4 * p], &raster.samples[4 * p + 3]);
      }
      return to_grayscale(rgb);
    }
    default:
      throw InvalidArgument("unsupported channel count " + std::to_string(raster.channels));
  }
}

FieldVector pad_and_vectorize(const Image& img) {
  const std::size_t h = img.height();
  const std::size_t w = img.width();
  if (h == 0 || w == 0) throw InvalidArgument("cannot pad an empty image");
  FieldVector u{FieldLayout::kExtendedCenters2D, w, h, {}};
  u.values.resize((w + 2) * (h + 2));
  for (std::size_t jj = 0; jj < h + 2; ++jj) {
    const std::size_t j = std::clamp<std::size_t>(jj, 1, h) - 1;
    for (std::size_t ii = 0; ii < w + 2; ++ii) {
      const std::size_t i = std::clamp<std::size_t>(ii, 1, w) - 1;
      u.values[ii + jj * (w + 2)] = img(j, i);
    }
  }
  return u;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Raster load_raster(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return decode_image(bytes);
}

Image load_grayscale(const std::filesystem::path& path) { return as_grayscale(load_raster(path)); }

void save_pgm(const std::filesystem::path& path, const Image& img) {
  write_file(path, encode_pgm(img));
}

}  // namespace mimdet
