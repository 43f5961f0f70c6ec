#include "mimdet/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "mimdet/error.hpp"

namespace mimdet {
namespace {

struct Blob {
  double cx, cy;  // center, fraction of width / height
  double rx, ry;  // radii, fraction of width / height
  double angle;   // radians
  double level;   // base intensity
  double shade;   // strength of the lit-from-top-left gradient
};

constexpr std::array<Blob, 7> kBlobs = {{
    {0.30, 0.35, 0.22, 0.16, 0.4, 0.78, 0.18},
    {0.68, 0.30, 0.18, 0.20, -0.3, 0.55, 0.15},
    {0.50, 0.70, 0.30, 0.17, 0.1, 0.70, 0.20},
    {0.18, 0.78, 0.12, 0.14, 0.0, 0.35, 0.10},
    {0.83, 0.72, 0.12, 0.22, 0.2, 0.85, 0.12},
    {0.45, 0.45, 0.08, 0.07, 0.0, 0.95, 0.05},
    {0.62, 0.55, 0.06, 0.10, 0.7, 0.25, 0.05},
}};

// C1 step from 0 to 1 over [-1, 1].
double smoothstep(double t) {
  t = std::clamp(0.5 * (t + 1.0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

}  // namespace

Image synthetic_scene(std::size_t height, std::size_t width) {
  if (height < 2 || width < 2) throw InvalidArgument("synthetic_scene: size too small");
  Image img(height, width);
  const double edge_px = 1.5;
  for (std::size_t j = 0; j < height; ++j) {
    const double y = (static_cast<double>(j) + 0.5) / static_cast<double>(height);
    for (std::size_t i = 0; i < width; ++i) {
      const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(width);
      double v = 0.30 + 0.12 * x - 0.08 * y + 0.03 * std::sin(2.0 * std::numbers::pi * (x + 0.5 * y));
      for (const Blob& b : kBlobs) {
        const double dx = (x - b.cx) * static_cast<double>(width);
        const double dy = (y - b.cy) * static_cast<double>(height);
        const double c = std::cos(b.angle), s = std::sin(b.angle);
        const double u = (c * dx + s * dy) / (b.rx * static_cast<double>(width));
        const double w = (-s * dx + c * dy) / (b.ry * static_cast<double>(height));
        const double r = std::sqrt(u * u + w * w);
        // Signed distance to the rim in pixels, approximately.
        const double dist = (1.0 - r) * std::min(b.rx * static_cast<double>(width), b.ry * static_cast<double>(height));
        const double inside = smoothstep(dist / edge_px);
        if (inside <= 0.0) continue;
        const double lit = b.level + b.shade * (0.5 - 0.5 * (u + w) / std::sqrt(2.0)) - 0.08 * r * r;
        v = (1.0 - inside) * v + inside * lit;
      }
      img(j, i) = std::clamp(v, 0.0, 1.0);
    }
  }
  return img;
}

Image smooth_random_image(std::size_t height, std::size_t width, std::uint64_t seed) {
  if (height < 2 || width < 2) throw InvalidArgument("smooth_random_image: size too small");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  struct Mode {
    double fx, fy, phase, amp;
  };
  std::array<Mode, 4> modes;
  for (auto& m : modes) m = {uniform(0.0, 3.0), uniform(0.0, 3.0), uniform(0.0, 6.283185307179586), uniform(0.02, 0.1)};
  const double base = uniform(0.4, 0.6);

  Image img(height, width);
  for (std::size_t j = 0; j < height; ++j) {
    const double y = static_cast<double>(j) / static_cast<double>(height);
    for (std::size_t i = 0; i < width; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(width);
      double v = base;
      for (const auto& m : modes) v += m.amp * std::cos(2.0 * std::numbers::pi * (m.fx * x + m.fy * y) + m.phase);
      img(j, i) = std::clamp(v, 0.1, 0.9);
    }
  }
  return img;
}

}  // namespace mimdet
