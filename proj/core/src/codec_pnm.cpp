#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mimdet/error.hpp"
#include "mimdet/image.hpp"

namespace mimdet {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  unsigned long number(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) {
      throw DecodeError(DecodeErrorKind::kTruncated, std::string("PNM header ends before ") + field);
    }
    if (!std::isdigit(bytes_[pos_])) {
      throw DecodeError(DecodeErrorKind::kMalformedHeader, std::string("PNM header: bad ") + field);
    }
    unsigned long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFul) {
        throw DecodeError(DecodeErrorKind::kMalformedHeader, std::string("PNM header: ") + field + " too large");
      }
      ++pos_;
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void single_space() {
    if (pos_ >= bytes_.size()) throw DecodeError(DecodeErrorKind::kTruncated, "PNM header ends after maxval");
    if (!std::isspace(bytes_[pos_])) {
      throw DecodeError(DecodeErrorKind::kMalformedHeader, "PNM header: missing whitespace after maxval");
    }
    ++pos_;
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

Raster decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw DecodeError(DecodeErrorKind::kTruncated, "PNM: empty input");
  if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    if (bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') {
      throw DecodeError(DecodeErrorKind::kUnsupportedFormat, "only binary P5/P6 PNM is supported");
    }
    throw DecodeError(DecodeErrorKind::kMalformedHeader, "PNM: bad magic number");
  }
  const std::size_t channels = bytes[1] == '5' ? 1 : 3;

  HeaderReader hdr(bytes);
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw DecodeError(DecodeErrorKind::kMalformedHeader, "PNM: magic number not followed by whitespace");
  }
  const unsigned long width = hdr.number("width");
  const unsigned long height = hdr.number("height");
  const unsigned long maxval = hdr.number("maxval");
  hdr.single_space();

  if (width == 0 || height == 0) throw DecodeError(DecodeErrorKind::kMalformedHeader, "PNM: zero dimension");
  if (maxval == 0 || maxval > 65535) {
    throw DecodeError(DecodeErrorKind::kUnsupportedBitDepth,
                      "PNM: maxval " + std::to_string(maxval) + " outside 1..65535");
  }
  const std::size_t bps = maxval < 256 ? 1 : 2;
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - hdr.pos() < count * bps) {
    throw DecodeError(DecodeErrorKind::kTruncated,
                      "PNM: payload has " + std::to_string(bytes.size() - hdr.pos()) +
                          " bytes, expected " + std::to_string(count * bps));
  }

  Raster out{height, width, channels, std::vector<double>(count)};
  const std::uint8_t* p = bytes.data() + hdr.pos();
  for (std::size_t s = 0; s < count; ++s) {
    unsigned v = bps == 1 ? p[s] : (static_cast<unsigned>(p[2 * s]) << 8) | p[2 * s + 1];
    if (v > maxval) throw DecodeError(DecodeErrorKind::kCorruptData, "PNM: sample exceeds maxval");
    out.samples[s] = static_cast<double>(v) / static_cast<double>(maxval);
  }
  return out;
}

std::vector<std::uint8_t> encode_pgm(const Image& img) {
  std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + img.size());
  for (double v : img.samples()) {
    out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)));
  }
  return out;
}

std::vector<std::uint8_t> encode_pgm16(const Image& img) {
  std::string header = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n65535\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + 2 * img.size());
  for (double v : img.samples()) {
    auto q = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
    out.push_back(static_cast<std::uint8_t>(q >> 8));
    out.push_back(static_cast<std::uint8_t>(q & 0xFF));
  }
  return out;
}

}  // namespace mimdet
