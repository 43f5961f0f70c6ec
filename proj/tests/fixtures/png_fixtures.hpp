#pragma once

// Small PNGs written by an external encoder (Pillow), with their expected
// pixel values in the comments.

#include <cstdint>
#include <vector>

namespace mimdet::fixtures {

// 4x3 RGB8, rows: red green blue white / (10,20,30) (40,50,60) (70,80,90) black /
// (200,100,50) (1,2,3) (128,128,128) (255,254,253)
inline const std::vector<std::uint8_t> kRgb8 = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x04, 0x00, 0x00, 0x00, 0x03, 0x08, 0x02, 0x00, 0x00, 0x00, 0x3b, 0x96, 0x39, 0x91, 0x00, 0x00, 0x00, 0x30, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xf8, 0xcf, 0xc0, 0xc0, 0xf0, 0x9f, 0x81, 0x81, 0xe1, 0xff, 0xff, 0xff, 0xff, 0x19, 0xb8, 0x44, 0xe4, 0x34, 0x8c, 0x6c, 0xdc, 0x02, 0xa2, 0x18, 0x18, 0x18, 0x98, 0xf6, 0x05, 0x88, 0xdc, 0xbc, 0x70, 0xdc, 0xca, 0x40, 0xed, 0xff, 0xbf, 0xbf, 0x00, 0x05, 0xb4, 0x0e, 0xdb, 0x79, 0xb8, 0xf5, 0x80, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
// 3x3 gray16: 0 1000 65535 / 30000 12345 65534 / 1 2 3
inline const std::vector<std::uint8_t> kGray16 = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x03, 0x00, 0x00, 0x00, 0x03, 0x10, 0x00, 0x00, 0x00, 0x00, 0x23, 0xd3, 0x36, 0x20, 0x00, 0x00, 0x00, 0x1d, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x60, 0x60, 0x7e, 0xf1, 0xff, 0x3f, 0x43, 0xa9, 0x81, 0x81, 0xe5, 0xff, 0x7f, 0x8c, 0x0c, 0x8c, 0x0c, 0x8c, 0x0c, 0x8c, 0x00, 0x4c, 0x06, 0x05, 0xf9, 0x96, 0x64, 0xc5, 0xc8, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
// 5x2 palette: indices 0 1 2 3 0 / 3 2 1 0 1 over black, red, green, blue
inline const std::vector<std::uint8_t> kPalette = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x05, 0x00, 0x00, 0x00, 0x02, 0x02, 0x03, 0x00, 0x00, 0x00, 0xed, 0x04, 0xfe, 0xce, 0x00, 0x00, 0x00, 0x0c, 0x50, 0x4c, 0x54, 0x45, 0x00, 0x00, 0x00, 0xff, 0x00, 0x00, 0x00, 0xff, 0x00, 0x00, 0x00, 0xff, 0x9b, 0xc0, 0x13, 0xdc, 0x00, 0x00, 0x00, 0x0e, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x90, 0x66, 0x60, 0x78, 0xe2, 0x00, 0x00, 0x02, 0x95, 0x01, 0x40, 0x0b, 0x14, 0xd1, 0xe1, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
// 2x2 RGBA8, R channel 10 20 / 30 40, G=B=0, alpha varies
inline const std::vector<std::uint8_t> kRgba8 = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x08, 0x06, 0x00, 0x00, 0x00, 0x72, 0xb6, 0x0d, 0x24, 0x00, 0x00, 0x00, 0x1a, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0xe4, 0x62, 0x60, 0xf8, 0xcf, 0xc5, 0xc0, 0xc0, 0xc8, 0x22, 0xc2, 0xc0, 0xd0, 0xc8, 0xc5, 0xc0, 0xc0, 0x0e, 0x00, 0x12, 0xc4, 0x01, 0xc0, 0xaf, 0x30, 0xe9, 0xf6, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
// 64x16 gray8 horizontal ramp, value 4*i
inline const std::vector<std::uint8_t> kGrayRamp = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x40, 0x00, 0x00, 0x00, 0x10, 0x08, 0x00, 0x00, 0x00, 0x00, 0x83, 0x8c, 0x26, 0xf5, 0x00, 0x00, 0x00, 0x1a, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x64, 0x60, 0xa1, 0x0c, 0x30, 0x31, 0x50, 0x08, 0x46, 0x0d, 0x18, 0x35, 0x60, 0xd4, 0x80, 0xc1, 0x62, 0x00, 0x00, 0x24, 0x90, 0x01, 0x1c, 0xce, 0x89, 0xa1, 0x6a, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};

}  // namespace mimdet::fixtures
