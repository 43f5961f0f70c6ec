#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mimdet/image.hpp"

namespace mimdet {

enum class PerturbationKind { kSignNoise, kSmoothControl };

/// Additive H x W field with l-infinity budget `epsilon`, row-major.
struct Perturbation {
  std::size_t height = 0;
  std::size_t width = 0;
  double epsilon = 0.0;
  PerturbationKind kind = PerturbationKind::kSignNoise;
  std::optional<std::uint64_t> seed;
  std::vector<double> delta;

  double operator()(std::size_t j, std::size_t i) const { return delta[j * width + i]; }
};

/// epsilon * sign(eta), eta i.i.d. standard normal from a seeded generator;
/// sign(0) counts as +1.
Perturbation sign_noise(std::size_t height, std::size_t width, double epsilon, std::uint64_t seed);

/// epsilon * sin(4 pi i / W) * sin(4 pi j / H), zero-based i along width and
/// j along height.
Perturbation smooth_control(std::size_t height, std::size_t width, double epsilon);

/// min(1, max(0, img + delta)) per pixel.
Image apply_and_clip(const Image& img, const Perturbation& p);

/// Affine map [-epsilon, epsilon] -> [0, 1] for export; mid-gray when
/// epsilon is 0.
Image perturbation_to_image(const Perturbation& p);

}  // namespace mimdet
