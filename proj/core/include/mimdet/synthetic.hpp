#pragma once

#include <cstddef>
#include <cstdint>

#include "mimdet/image.hpp"

namespace mimdet {

/// Deterministic piecewise-smooth test scene: shaded elliptical objects with
/// soft edges over a smooth background. Stands in for natural photographs
/// when none is available.
Image synthetic_scene(std::size_t height, std::size_t width);

/// Random smooth image (a few low-frequency cosine modes), samples within
/// [0.1, 0.9]. Deterministic per seed.
Image smooth_random_image(std::size_t height, std::size_t width, std::uint64_t seed);

}  // namespace mimdet
