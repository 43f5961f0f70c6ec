#include <zlib.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mimdet/error.hpp"
#include "mimdet/image.hpp"

namespace mimdet {
namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

std::uint32_t be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

[[noreturn]] void fail(DecodeErrorKind kind, const std::string& msg) {
  throw DecodeError(kind, "PNG: " + msg);
}

struct Header {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  int bit_depth = 0;
  int color_type = 0;
  bool interlaced = false;

  int samples_per_pixel() const {
    switch (color_type) {
      case 0: return 1;
      case 2: return 3;
      case 3: return 1;
      case 4: return 2;
      case 6: return 4;
    }
    return 0;
  }
  std::size_t bits_per_pixel() const { return static_cast<std::size_t>(samples_per_pixel()) * bit_depth; }
  std::size_t row_bytes(std::size_t w) const { return (w * bits_per_pixel() + 7) / 8; }
  std::size_t filter_stride() const { return std::max<std::size_t>(1, bits_per_pixel() / 8); }
};

Header parse_ihdr(const std::uint8_t* d, std::uint32_t len) {
  if (len != 13) fail(DecodeErrorKind::kMalformedHeader, "IHDR length " + std::to_string(len));
  Header h;
  h.width = be32(d);
  h.height = be32(d + 4);
  h.bit_depth = d[8];
  h.color_type = d[9];
  if (h.width == 0 || h.height == 0 || h.width > (1u << 24) || h.height > (1u << 24)) {
    fail(DecodeErrorKind::kMalformedHeader, "bad dimensions");
  }
  if (d[10] != 0 || d[11] != 0) fail(DecodeErrorKind::kMalformedHeader, "unknown compression or filter method");
  if (d[12] > 1) fail(DecodeErrorKind::kMalformedHeader, "unknown interlace method");
  h.interlaced = d[12] == 1;

  bool depth_ok = false;
  switch (h.color_type) {
    case 0: depth_ok = h.bit_depth == 1 || h.bit_depth == 2 || h.bit_depth == 4 || h.bit_depth == 8 || h.bit_depth == 16; break;
    case 3: depth_ok = h.bit_depth == 1 || h.bit_depth == 2 || h.bit_depth == 4 || h.bit_depth == 8; break;
    case 2:
    case 4:
    case 6: depth_ok = h.bit_depth == 8 || h.bit_depth == 16; break;
    default: fail(DecodeErrorKind::kMalformedHeader, "unknown color type " + std::to_string(h.color_type));
  }
  if (!depth_ok) {
    fail(DecodeErrorKind::kUnsupportedBitDepth, "bit depth " + std::to_string(h.bit_depth) +
                                                    " invalid for color type " + std::to_string(h.color_type));
  }
  return h;
}

int paeth(int a, int b, int c) {
  int p = a + b - c;
  int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

// Reverses the per-scanline filters in place; `data` holds `rows` lines of
// 1 + row_bytes bytes.
void unfilter(std::uint8_t* data, std::size_t rows, std::size_t row_bytes, std::size_t stride) {
  std::vector<std::uint8_t> zero(row_bytes, 0);
  const std::uint8_t* prev = zero.data();
  for (std::size_t r = 0; r < rows; ++r) {
    std::uint8_t* line = data + r * (row_bytes + 1);
    const std::uint8_t type = line[0];
    std::uint8_t* cur = line + 1;
    for (std::size_t i = 0; i < row_bytes; ++i) {
      const int a = i >= stride ? cur[i - stride] : 0;
      const int b = prev[i];
      const int c = i >= stride ? prev[i - stride] : 0;
      int pred = 0;
      switch (type) {
        case 0: pred = 0; break;
        case 1: pred = a; break;
        case 2: pred = b; break;
        case 3: pred = (a + b) / 2; break;
        case 4: pred = paeth(a, b, c); break;
        default: fail(DecodeErrorKind::kCorruptData, "unknown filter type " + std::to_string(type));
      }
      cur[i] = static_cast<std::uint8_t>(cur[i] + pred);
    }
    prev = cur;
  }
}

unsigned read_sample(const std::uint8_t* line, std::size_t index, int depth) {
  switch (depth) {
    case 16: return (static_cast<unsigned>(line[2 * index]) << 8) | line[2 * index + 1];
    case 8: return line[index];
    default: {
      const std::size_t bit = index * static_cast<std::size_t>(depth);
      const unsigned byte = line[bit / 8];
      const unsigned shift = 8 - static_cast<unsigned>(depth) - static_cast<unsigned>(bit % 8);
      return (byte >> shift) & ((1u << depth) - 1);
    }
  }
}

struct Pass {
  std::size_t x0, y0, dx, dy;
};

constexpr std::array<Pass, 7> kAdam7 = {{{0, 0, 8, 8}, {4, 0, 8, 8}, {0, 4, 4, 8}, {2, 0, 4, 4},
                                         {0, 2, 2, 4}, {1, 0, 2, 2}, {0, 1, 1, 2}}};

std::vector<std::uint8_t> inflate_all(const std::vector<std::uint8_t>& compressed, std::size_t expected) {
  std::vector<std::uint8_t> out(expected);
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) fail(DecodeErrorKind::kCorruptData, "zlib init failed");
  zs.next_in = const_cast<Bytef*>(compressed.data());
  zs.avail_in = static_cast<uInt>(compressed.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = expected - zs.avail_out;
  inflateEnd(&zs);
  if (rc == Z_DATA_ERROR || rc == Z_NEED_DICT || rc == Z_MEM_ERROR) {
    fail(DecodeErrorKind::kCorruptData, "compressed stream is invalid");
  }
  if (produced < expected) {
    fail(DecodeErrorKind::kTruncated, "image data holds " + std::to_string(produced) + " of " +
                                          std::to_string(expected) + " bytes");
  }
  return out;
}

}  // namespace

Raster decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kSignature.size()) fail(DecodeErrorKind::kTruncated, "shorter than signature");
  if (!std::equal(kSignature.begin(), kSignature.end(), bytes.begin())) {
    fail(DecodeErrorKind::kMalformedHeader, "bad signature");
  }

  Header hdr;
  bool have_header = false;
  bool have_end = false;
  std::vector<std::array<double, 3>> palette;
  std::vector<std::uint8_t> idat;

  std::size_t pos = kSignature.size();
  while (!have_end) {
    if (bytes.size() - pos < 12) fail(DecodeErrorKind::kTruncated, "missing IEND chunk");
    const std::uint32_t len = be32(&bytes[pos]);
    const std::uint8_t* type = &bytes[pos + 4];
    if (len > bytes.size() - pos - 12) fail(DecodeErrorKind::kTruncated, "chunk runs past end of file");
    const std::uint8_t* data = type + 4;
    const std::uint32_t crc = be32(data + len);
    if (crc32(crc32(0L, Z_NULL, 0), type, len + 4) != crc) {
      fail(DecodeErrorKind::kCorruptData, "chunk CRC mismatch");
    }
    const std::string name(reinterpret_cast<const char*>(type), 4);
    if (!have_header && name != "IHDR") fail(DecodeErrorKind::kMalformedHeader, "first chunk is not IHDR");

    if (name == "IHDR") {
      if (have_header) fail(DecodeErrorKind::kMalformedHeader, "duplicate IHDR");
      hdr = parse_ihdr(data, len);
      have_header = true;
    } else if (name == "PLTE") {
      if (len % 3 != 0 || len == 0 || len > 768) fail(DecodeErrorKind::kMalformedHeader, "bad PLTE length");
      for (std::uint32_t i = 0; i < len; i += 3) {
        palette.push_back({data[i] / 255.0, data[i + 1] / 255.0, data[i + 2] / 255.0});
      }
    } else if (name == "IDAT") {
      idat.insert(idat.end(), data, data + len);
    } else if (name == "IEND") {
      have_end = true;
    } else if ((type[0] & 0x20) == 0) {
      fail(DecodeErrorKind::kUnsupportedFormat, "unknown critical chunk " + name);
    }
    pos += static_cast<std::size_t>(len) + 12;
  }
  if (idat.empty()) fail(DecodeErrorKind::kTruncated, "no image data");
  if (hdr.color_type == 3 && palette.empty()) fail(DecodeErrorKind::kMalformedHeader, "palette image without PLTE");

  const std::size_t w = hdr.width;
  const std::size_t h = hdr.height;
  std::vector<Pass> passes;
  if (hdr.interlaced) {
    passes.assign(kAdam7.begin(), kAdam7.end());
  } else {
    passes.push_back({0, 0, 1, 1});
  }

  std::size_t expected = 0;
  for (const auto& p : passes) {
    const std::size_t pw = w > p.x0 ? (w - p.x0 + p.dx - 1) / p.dx : 0;
    const std::size_t ph = h > p.y0 ? (h - p.y0 + p.dy - 1) / p.dy : 0;
    if (pw && ph) expected += ph * (1 + hdr.row_bytes(pw));
  }
  std::vector<std::uint8_t> raw = inflate_all(idat, expected);

  const std::size_t out_channels = hdr.color_type == 3 ? 3 : static_cast<std::size_t>(hdr.samples_per_pixel());
  const std::size_t spp = static_cast<std::size_t>(hdr.samples_per_pixel());
  const double maxval = static_cast<double>((1u << hdr.bit_depth) - 1);
  Raster out{h, w, out_channels, std::vector<double>(w * h * out_channels)};

  std::size_t offset = 0;
  for (const auto& p : passes) {
    const std::size_t pw = w > p.x0 ? (w - p.x0 + p.dx - 1) / p.dx : 0;
    const std::size_t ph = h > p.y0 ? (h - p.y0 + p.dy - 1) / p.dy : 0;
    if (!pw || !ph) continue;
    const std::size_t rb = hdr.row_bytes(pw);
    unfilter(raw.data() + offset, ph, rb, hdr.filter_stride());
    for (std::size_t r = 0; r < ph; ++r) {
      const std::uint8_t* line = raw.data() + offset + r * (rb + 1) + 1;
      const std::size_t y = p.y0 + r * p.dy;
      for (std::size_t c = 0; c < pw; ++c) {
        const std::size_t x = p.x0 + c * p.dx;
        double* dst = &out.samples[(y * w + x) * out_channels];
        if (hdr.color_type == 3) {
          const unsigned idx = read_sample(line, c, hdr.bit_depth);
          if (idx >= palette.size()) fail(DecodeErrorKind::kCorruptData, "palette index out of range");
          std::copy(palette[idx].begin(), palette[idx].end(), dst);
        } else {
          for (std::size_t s = 0; s < spp; ++s) {
            dst[s] = static_cast<double>(read_sample(line, c * spp + s, hdr.bit_depth)) / maxval;
          }
        }
      }
    }
    offset += ph * (rb + 1);
  }
  return out;
}

std::vector<std::uint8_t> encode_png(const Raster& raster) {
  if (raster.channels != 1 && raster.channels != 3) {
    throw InvalidArgument("encode_png supports 1 or 3 channels");
  }
  if (raster.samples.size() != raster.height * raster.width * raster.channels || raster.height == 0 ||
      raster.width == 0) {
    throw ShapeMismatch("encode_png: raster size mismatch");
  }
  const std::size_t row_bytes = raster.width * raster.channels;
  std::vector<std::uint8_t> filtered;
  filtered.reserve(raster.height * (row_bytes + 1));
  for (std::size_t y = 0; y < raster.height; ++y) {
    filtered.push_back(0);
    for (std::size_t i = 0; i < row_bytes; ++i) {
      double v = std::clamp(raster.samples[y * row_bytes + i], 0.0, 1.0);
      filtered.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
    }
  }
  uLongf zlen = compressBound(static_cast<uLong>(filtered.size()));
  std::vector<std::uint8_t> z(zlen);
  if (compress2(z.data(), &zlen, filtered.data(), static_cast<uLong>(filtered.size()), 9) != Z_OK) {
    throw Error("PNG: compression failed");
  }
  z.resize(zlen);

  std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());
  auto chunk = [&out](const char* name, const std::vector<std::uint8_t>& data) {
    put_be32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), name, name + 4);
    out.insert(out.end(), data.begin(), data.end());
    put_be32(out, static_cast<std::uint32_t>(crc32(crc32(0L, Z_NULL, 0), &out[start],
                                                   static_cast<uInt>(out.size() - start))));
  };
  std::vector<std::uint8_t> ihdr;
  put_be32(ihdr, static_cast<std::uint32_t>(raster.width));
  put_be32(ihdr, static_cast<std::uint32_t>(raster.height));
  ihdr.push_back(8);
  ihdr.push_back(raster.channels == 1 ? 0 : 2);
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  chunk("IHDR", ihdr);
  chunk("IDAT", z);
  chunk("IEND", {});
  return out;
}

}  // namespace mimdet
